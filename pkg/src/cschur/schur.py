"""Schur algebras for the tensor module: compositions, the module
isomorphism kappa, the phi basis, the quantum-generator images Psi, weight
idempotents, and the constructive generation certificates.

A composition lambda of d into r+2 parts determines a finite parabolic
W_lambda (generators away from the cut points), the sum
x_lambda = sum q_w^-1 T_w over W_lambda, and the vector
M_lambda = v_0^(x lambda_0) (x) ... (x) v_{r+1}^(x lambda_{r+1}).
kappa sends x_lambda h to M_lambda . h; its inverse is computed by
triangular elimination over coset lengths, with the strict-decrease
assertion turned into a runtime check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .hecke import HeckeAlgebra, HeckeElt
from .scalars import Coeffs, ONE, Scalar, ZERO, format_scalar
from .tensor import TensorModule, TensorVec
from .weyl import WeylElt, WeylGroup


class TriangularityError(AssertionError):
    """The elimination in kappa_inv failed to make progress."""


class ChainError(ValueError):
    """No nested-parabolic move chain exists for a composition."""


class Composition(tuple):
    """A weak composition of d into r+2 parts."""

    def __new__(cls, parts: Iterable[int]):
        self = super().__new__(cls, parts)
        if any(p < 0 for p in self):
            raise ValueError("composition parts must be nonnegative")
        return self

    @property
    def r(self) -> int:
        return len(self) - 2

    @property
    def d(self) -> int:
        return sum(self)

    def cuts(self) -> tuple[int, ...]:
        """Partial sums lambda_0, lambda_{0,1}, ..., lambda_{0,r}."""
        out = []
        acc = 0
        for p in self[:-1]:
            acc += p
            out.append(acc)
        return tuple(out)

    def weyl_gens(self) -> frozenset[int]:
        return frozenset(range(self.d + 1)) - set(self.cuts())

    def tilde_e(self, i: int) -> "Composition | None":
        """Move one unit from slot i+1 to slot i; None if slot i+1 is empty."""
        if not 0 <= i <= self.r:
            raise IndexError(f"move index {i} out of range 0..{self.r}")
        if self[i + 1] == 0:
            return None
        parts = list(self)
        parts[i] += 1
        parts[i + 1] -= 1
        return Composition(parts)

    def tilde_f(self, i: int) -> "Composition | None":
        if not 0 <= i <= self.r:
            raise IndexError(f"move index {i} out of range 0..{self.r}")
        if self[i] == 0:
            return None
        parts = list(self)
        parts[i] -= 1
        parts[i + 1] += 1
        return Composition(parts)

    def index_tuple(self) -> tuple[int, ...]:
        """(0^{lambda_0}, 1^{lambda_1}, ..., (r+1)^{lambda_{r+1}})."""
        out: list[int] = []
        for val, mult in enumerate(self):
            out.extend([val] * mult)
        return tuple(out)


def omega(r: int, d: int) -> Composition:
    if r < d:
        raise ValueError(f"omega needs r >= d (got r={r}, d={d})")
    return Composition((0,) + (1,) * d + (0,) * (r - d) + (0,))


def enumerate_compositions(r: int, d: int, variant: str = "jj") -> list[Composition]:
    """All compositions of d into r+2 parts, filtered by the variant."""
    if r < d:
        raise ValueError(f"composition enumeration needs r >= d (got r={r}, d={d})")
    out = []
    for c in itertools.combinations_with_replacement(range(r + 2), d):
        parts = [0] * (r + 2)
        for v in c:
            parts[v] += 1
        lam = Composition(parts)
        if variant in ("ji", "ii") and lam[-1] != 0:
            continue
        if variant in ("ij", "ii") and lam[0] != 0:
            continue
        out.append(lam)
    return sorted(out)


class SchurElt:
    """An endomorphism of the permutation-module sum, stored by its images
    on the generators M_lambda."""

    __slots__ = ("ctx", "images")

    def __init__(self, ctx: "SchurContext", images: dict[Composition, TensorVec]):
        self.ctx = ctx
        self.images = {lam: v for lam, v in images.items() if not v.is_zero()}

    def __add__(self, other: "SchurElt") -> "SchurElt":
        out = dict(self.images)
        for lam, v in other.images.items():
            out[lam] = out[lam] + v if lam in out else v
        return SchurElt(self.ctx, out)

    def __sub__(self, other: "SchurElt") -> "SchurElt":
        return self + other.scale(self.ctx.minus_one)

    def scale(self, c: Scalar) -> "SchurElt":
        return SchurElt(self.ctx, {lam: v.scale(c) for lam, v in self.images.items()})

    def image(self, lam: Composition) -> TensorVec:
        return self.images.get(lam, self.ctx.V.zero())

    def apply(self, vec: TensorVec) -> TensorVec:
        """Evaluate on an arbitrary vector through the kappa decomposition."""
        ctx = self.ctx
        out = ctx.V.zero()
        for coef, lam, w in ctx.kappa_inv(vec):
            img = self.images.get(lam)
            if img is not None:
                out = out + ctx.V.act_word(img, ctx.W.reduced_word(w)).scale(coef)
        return out

    def __matmul__(self, other: "SchurElt") -> "SchurElt":
        """Composition: (self @ other)(x) = self(other(x))."""
        return SchurElt(self.ctx, {mu: self.apply(v) for mu, v in other.images.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SchurElt):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        raise TypeError("SchurElt is not hashable")

    def is_zero(self) -> bool:
        return not self.images

    def __str__(self) -> str:
        return self.ctx.format_schur(self)

    def __repr__(self) -> str:
        return f"SchurElt({self})"


@dataclass
class CertTerm:
    coeff: Scalar
    factors: tuple[str, ...]  # atom names, applied right to left


@dataclass
class Certificate:
    target: tuple[Composition, Composition, tuple[int, ...]]  # (lam, mu, word of g)
    terms: list[CertTerm]


class SchurContext:
    """Bundles the Weyl group, Hecke algebra and tensor module at one size,
    with the kappa machinery and caches shared by the Schur-side checks."""

    def __init__(self, r: int, d: int, coeffs: Coeffs | None = None, variant: str = "jj"):
        if r < d:
            raise ValueError(f"Schur context needs r >= d (got r={r}, d={d})")
        if variant == "ii" and (r < 2 or d < 2):
            raise ValueError("variant ii needs r >= 2 and d >= 2")
        self.r = r
        self.d = d
        self.n = 2 * r + 2
        self.variant = variant
        self.coeffs = coeffs if coeffs is not None else Coeffs.generic()
        self.W = WeylGroup(d, self.n)
        self.H = HeckeAlgebra(self.W, self.coeffs)
        self.V = TensorModule(r, d, self.coeffs, variant)
        self.compositions = enumerate_compositions(r, d, variant)
        self.omega = omega(r, d)
        self.minus_one = ZERO - ONE
        self._M: dict[Composition, TensorVec] = {}
        self._x: dict[Composition, HeckeElt] = {}
        self._dom: dict[tuple[int, ...], tuple[Composition, WeylElt]] = {}
        self._kxw: dict[tuple, TensorVec] = {}
        self._psi: dict[str, SchurElt] = {}
        self._idem: dict[Composition, SchurElt] = {}
        self._minrep: dict[tuple, WeylElt] = {}

    # -- basic objects

    def M(self, lam: Composition) -> TensorVec:
        v = self._M.get(lam)
        if v is None:
            v = self.V.basis(lam.index_tuple())
            self._M[lam] = v
        return v

    def x_elt(self, lam: Composition) -> HeckeElt:
        x = self._x.get(lam)
        if x is None:
            x = self.H.x_parabolic(lam.weyl_gens())
            self._x[lam] = x
        return x

    def composition_of_residues(self, f: Sequence[int]) -> Composition:
        parts = [0] * (self.r + 2)
        for j in f:
            k, _ = self.V.residue(j)
            parts[abs(k) if k != -(self.r + 1) else self.r + 1] += 1
        return Composition(parts)

    # -- kappa and its inverse

    def dominant_data(self, f: Sequence[int]) -> tuple[Composition, WeylElt]:
        """The unique (lambda, w) with f = lambda-point . w and w minimal."""
        f = tuple(f)
        cached = self._dom.get(f)
        if cached is not None:
            return cached
        W = self.W
        half = self.n // 2
        cur = list(f)
        letters: list[int] = []
        for _ in range(100000):
            if cur[0] < 0:
                i = 0
                cur[0] = -cur[0]
            else:
                for p in range(self.d - 1):
                    if cur[p] > cur[p + 1]:
                        i = p + 1
                        cur[p], cur[p + 1] = cur[p + 1], cur[p]
                        break
                else:
                    if cur[-1] > half:
                        i = self.d
                        cur[-1] = self.n - cur[-1]
                    else:
                        break
            letters.append(i)
        else:
            raise AssertionError(f"domination walk did not terminate for {f}")
        parts = [0] * (self.r + 2)
        for v in cur:
            parts[v] += 1
        lam = Composition(parts)
        w = W.word_elt(letters).inverse()
        if W.length(w) != len(letters) or not W.is_min_right(w, lam.weyl_gens()):
            raise AssertionError(f"domination walk produced a non-minimal word for {f}")
        out = (lam, w)
        self._dom[f] = out
        return out

    def kappa_x_w(self, lam: Composition, w: WeylElt) -> TensorVec:
        """kappa(x_lambda T_w) = M_lambda . T_w (cached)."""
        key = (lam, w.key)
        v = self._kxw.get(key)
        if v is None:
            v = self.V.act_word(self.M(lam), self.W.reduced_word(w))
            self._kxw[key] = v
        return v

    def kappa(self, parts: Iterable[tuple[Composition, HeckeElt]]) -> TensorVec:
        out = self.V.zero()
        for lam, h in parts:
            out = out + self.V.act_hecke(self.M(lam), h)
        return out

    def kappa_inv(self, vec: TensorVec) -> list[tuple[Scalar, Composition, WeylElt]]:
        """Triangular elimination; raises TriangularityError on stalls."""
        remaining = dict(vec.terms)
        out: list[tuple[Scalar, Composition, WeylElt]] = []
        prev: tuple[int, int] | None = None
        while remaining:
            lengths = {f: self.W.length(self.dominant_data(f)[1]) for f in remaining}
            top = max(lengths.values())
            at_top = sorted(f for f, l in lengths.items() if l == top)
            cur = (top, len(at_top))
            if prev is not None and cur >= prev:
                raise TriangularityError(
                    f"no strict decrease: {prev} -> {cur} while inverting kappa")
            prev = cur
            f = at_top[0]
            lam, w = self.dominant_data(f)
            img = self.kappa_x_w(lam, w)
            lead = img.terms.get(f)
            if lead is None:
                raise TriangularityError(
                    f"kappa(x_{tuple(lam)} T_w) misses its leading index {f}")
            coef = remaining[f] / lead
            out.append((coef, lam, w))
            for g, c in img.terms.items():
                s = remaining.get(g)
                cc = coef * c
                s = -cc if s is None else s - cc
                if s.is_zero():
                    remaining.pop(g, None)
                else:
                    remaining[g] = s
        return out

    # -- the phi basis

    def min_double_rep(self, lam: Composition, g: WeylElt, mu: Composition) -> WeylElt:
        key = (lam, g.key, mu)
        cached = self._minrep.get(key)
        if cached is None:
            cached = self.W.min_double_rep(lam.weyl_gens(), g, mu.weyl_gens())
            self._minrep[key] = cached
        return cached

    def is_double_rep(self, lam: Composition, g: WeylElt, mu: Composition) -> bool:
        return (self.W.is_min_right(g, lam.weyl_gens())
                and self.W.is_min_left(g, mu.weyl_gens()))

    def phi(self, lam: Composition, mu: Composition, g: WeylElt | Sequence[int]) -> SchurElt:
        """The basis endomorphism x_mu -> T_{W_lam g W_mu}."""
        if not isinstance(g, WeylElt):
            g = self.W.word_elt(g)
        if not self.is_double_rep(lam, g, mu):
            raise ValueError(f"{self.W.elt_str(g)} is not a minimal (W_lam, W_mu) double-coset representative")
        lgens = lam.weyl_gens()
        coset = self.W.double_coset(lgens, g, mu.weyl_gens())
        reps = [w for w in coset if self.W.is_min_right(w, lgens)]
        img = self.V.act_hecke(self.M(lam), self.H.T_X(reps))
        return SchurElt(self, {mu: img})

    def phi_expand(self, selt: SchurElt) -> dict[tuple[Composition, Composition, tuple], Scalar]:
        """Expansion in the phi basis, with the per-coset consistency check
        that certifies the element is a module homomorphism."""
        out: dict[tuple[Composition, Composition, tuple], Scalar] = {}
        for mu, img in selt.images.items():
            for coef, lam, w in self.kappa_inv(img):
                g = self.min_double_rep(lam, w, mu)
                key = (lam, mu, g.key)
                val = coef * self.H.q_w(w)
                seen = out.get(key)
                if seen is None:
                    out[key] = val
                elif seen != val:
                    raise AssertionError(
                        f"inconsistent phi coefficients at {key}: {seen} vs {val}")
        return out

    def phi_from_key(self, key: tuple[Composition, Composition, tuple]) -> SchurElt:
        lam, mu, gkey = key
        g = WeylElt(self.W, *gkey)
        return self.phi(lam, mu, g)

    # -- quantum-generator images

    def psi(self, name: str) -> SchurElt:
        cached = self._psi.get(name)
        if cached is None:
            op = self.V.coideal_op(name)
            cached = SchurElt(self, {lam: op(self.M(lam)) for lam in self.compositions})
            self._psi[name] = cached
        return cached

    def diag_eigenvalue(self, name: str, lam: Composition) -> Scalar:
        """Eigenvalue of a diagonal generator (h_a or k_i) on M_lambda."""
        img = self.psi(name).image(lam)
        if img.is_zero():
            return ZERO
        terms = img.terms
        key = lam.index_tuple()
        if list(terms) != [key]:
            raise AssertionError(f"generator {name} is not diagonal on M_{tuple(lam)}")
        return terms[key]

    def diag_names(self) -> list[str]:
        if self.variant == "jj":
            return [f"h{a}" for a in range(self.r + 2)]
        lo, hi = {"ji": (0, self.r - 1), "ij": (1, self.r), "ii": (1, self.r - 1)}[self.variant]
        return [f"k{i}" for i in range(lo, hi + 1)]

    def idempotent(self, lam: Composition) -> SchurElt:
        cached = self._idem.get(lam)
        if cached is None:
            cached = SchurElt(self, {lam: self.M(lam)})
            self._idem[lam] = cached
        return cached

    def idempotent_recipe(self, lam: Composition) -> list[tuple[str, Scalar, Scalar]]:
        """Interpolation factors (name, unwanted eigenvalue, lam's eigenvalue)
        whose product over mu != lam equals the weight idempotent."""
        names = self.diag_names()
        eigs = {mu: tuple(self.diag_eigenvalue(nm, mu) for nm in names)
                for mu in self.compositions}
        here = eigs[lam]
        recipe: list[tuple[str, Scalar, Scalar]] = []
        for mu in self.compositions:
            if mu == lam:
                continue
            for pos, nm in enumerate(names):
                if eigs[mu][pos] != here[pos]:
                    recipe.append((nm, eigs[mu][pos], here[pos]))
                    break
            else:
                raise AssertionError(
                    f"eigenvalue collision between {tuple(lam)} and {tuple(mu)}")
        return recipe

    def idempotent_from_recipe(self, lam: Composition) -> SchurElt:
        out = SchurElt(self, {mu: self.M(mu) for mu in self.compositions})  # identity
        for nm, bad, good in self.idempotent_recipe(lam):
            factor = (self.psi(nm) - self.identity_schur().scale(bad)).scale((good - bad).inv())
            out = factor @ out
        return out

    def identity_schur(self) -> SchurElt:
        return SchurElt(self, {mu: self.M(mu) for mu in self.compositions})

    # -- nested move chains from omega

    def move_chains(self) -> dict[Composition, list[tuple[str, Composition]]]:
        """For every composition, a move chain from omega whose parabolic
        subgroups grow weakly at each step.  Raises ChainError if stuck."""
        start = self.omega
        chains: dict[Composition, list[tuple[str, Composition]]] = {start: []}
        frontier = [start]
        allowed = set(self.compositions)
        while frontier:
            nxt = []
            for mu in frontier:
                gens_mu = mu.weyl_gens()
                for kind, i in [(k, i) for k in ("e", "f") for i in range(self.r + 1)]:
                    nu = mu.tilde_e(i) if kind == "e" else mu.tilde_f(i)
                    if nu is None or nu not in allowed or nu in chains:
                        continue
                    if not gens_mu <= nu.weyl_gens():
                        continue
                    chains[nu] = chains[mu] + [(f"{kind}{i}", nu)]
                    nxt.append(nu)
            frontier = nxt
        missing = [lam for lam in self.compositions if lam not in chains]
        if missing:
            raise ChainError(f"no nested move chain reaches {missing}")
        return chains

    def format_schur(self, selt: SchurElt) -> str:
        expansion = self.phi_expand(selt)
        if not expansion:
            return "0"
        parts = []
        for (lam, mu, gkey) in sorted(expansion, key=lambda k: (k[0], k[1], k[2])):
            c = expansion[(lam, mu, gkey)]
            g = WeylElt(self.W, *gkey)
            word = self.W.elt_str(g)
            basis = f"phi[{word}; {','.join(map(str, lam))}; {','.join(map(str, mu))}]"
            if c.is_one():
                parts.append(basis)
            else:
                cs = format_scalar(c)
                if "+" in cs[1:] or "-" in cs[1:] or "/" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{basis}")
        return " + ".join(parts)


def proportionality(va: TensorVec, vb: TensorVec) -> Scalar | None:
    """The scalar c with va = c * vb, or None if not proportional."""
    if vb.is_zero():
        return None if not va.is_zero() else ZERO
    if va.is_zero():
        return ZERO
    if set(va.terms) != set(vb.terms):
        return None
    f = next(iter(vb.terms))
    c = va.terms[f] / vb.terms[f]
    for g, coef in vb.terms.items():
        if va.terms[g] != coef * c:
            return None
    return c


class CertificateSet:
    """Evaluated certificates: for each phi-basis element up to the length
    bound, a linear combination of products of named atoms equal to it."""

    def __init__(self, ctx: SchurContext, maxlen: int = 3):
        self.ctx = ctx
        self.maxlen = maxlen
        self.atoms: dict[str, SchurElt] = {}
        self.certs: dict[tuple, Certificate] = {}
        self.values: dict[tuple, SchurElt] = {}

    def atom(self, name: str) -> SchurElt:
        a = self.atoms.get(name)
        if a is None:
            if name.startswith("psi:"):
                a = self.ctx.psi(name[4:])
            elif name.startswith("idem:"):
                lam = Composition(int(x) for x in name[5:].split(","))
                a = self.ctx.idempotent(lam)
            else:
                raise ValueError(f"unknown atom {name!r}")
            self.atoms[name] = a
        return a

    def evaluate(self, terms: list[CertTerm]) -> SchurElt:
        out = SchurElt(self.ctx, {})
        for term in terms:
            prod: SchurElt | None = None
            for name in term.factors:
                a = self.atom(name)
                prod = a if prod is None else prod @ a
            assert prod is not None
            out = out + prod.scale(term.coeff)
        return out

    def register(self, key: tuple, terms: list[CertTerm], value: SchurElt) -> None:
        lam, mu, gword = key
        direct = self.ctx.phi(lam, mu, self.ctx.W.word_elt(gword))
        if value != direct:
            raise AssertionError(f"certificate for {key} does not evaluate to its target")
        self.certs[key] = Certificate(key, terms)
        self.values[key] = value

    def to_json_obj(self) -> list[dict]:
        out = []
        for key in sorted(self.certs, key=lambda k: (len(k[2]), k)):
            lam, mu, gword = key
            cert = self.certs[key]
            out.append({
                "target": {
                    "word": list(gword),
                    "row": list(lam),
                    "col": list(mu),
                },
                "terms": [
                    {"coeff": format_scalar(t.coeff), "factors": list(t.factors)}
                    for t in cert.terms
                ],
            })
        return out


def generate_certificates(ctx: SchurContext, maxlen: int = 3) -> CertificateSet:
    """Constructive generation: certify every phi-basis element with
    representative length <= maxlen as a combination of products of the
    quantum-generator images and the weight idempotents."""
    W = ctx.W
    certs = CertificateSet(ctx, maxlen)

    def cert_terms(key) -> list[CertTerm]:
        return certs.certs[key].terms

    def register(lam, mu, g: WeylElt, terms: list[CertTerm]):
        key = (lam, mu, W.reduced_word(g))
        value = certs.evaluate(terms)
        certs.register(key, terms, value)
        return key

    # 1. single moves and chains from omega
    chains = ctx.move_chains()
    up: dict[Composition, list[CertTerm]] = {}    # phi^e_{lam, omega}
    down: dict[Composition, list[CertTerm]] = {}  # phi^e_{omega, lam}
    up[ctx.omega] = [CertTerm(ONE, (f"idem:{','.join(map(str, ctx.omega))}",))]
    down[ctx.omega] = up[ctx.omega]

    def step_terms(nu: Composition, mu: Composition, move: str) -> list[CertTerm]:
        """phi^e_{nu,mu} isolated from Psi(gen) by idempotent truncation."""
        gen = move
        direct = ctx.phi(nu, mu, W.identity)
        truncated = ctx.psi(gen).image(mu)
        c = proportionality(truncated, direct.image(mu))
        if c is None or c.is_zero():
            raise ChainError(f"Psi({gen}) does not isolate phi^e at {tuple(nu)},{tuple(mu)}")
        nu_name = f"idem:{','.join(map(str, nu))}"
        mu_name = f"idem:{','.join(map(str, mu))}"
        return [CertTerm(c.inv(), (nu_name, f"psi:{gen}", mu_name))]

    for lam in sorted(chains, key=lambda l: len(chains[l])):
        if lam == ctx.omega:
            continue
        chain = chains[lam]
        move, nu = chain[-1]
        mu = chain[-2][1] if len(chain) > 1 else ctx.omega
        # upward step phi^e_{lam, mu} and its reverse phi^e_{mu, lam}
        up_step = step_terms(lam, mu, move)
        rev = {"e": "f", "f": "e"}[move[0]] + move[1:]
        down_step = step_terms(mu, lam, rev)
        up[lam] = [CertTerm(a.coeff * b.coeff, a.factors + b.factors)
                   for a in up_step for b in up[mu]]
        down[lam] = [CertTerm(a.coeff * b.coeff, a.factors + b.factors)
                     for a in down[mu] for b in down_step]
        # verify the chained products land exactly on the target
        if certs.evaluate(up[lam]) != ctx.phi(lam, ctx.omega, W.identity):
            raise ChainError(f"up-chain for {tuple(lam)} is off target")
        if certs.evaluate(down[lam]) != ctx.phi(ctx.omega, lam, W.identity):
            raise ChainError(f"down-chain for {tuple(lam)} is off target")

    om = ctx.omega
    register(om, om, W.identity, up[om])

    # 2. phi^{s_i}_{omega,omega} for 0 <= i <= d
    def t_partner(gen: str) -> Composition:
        """Composition with trivial parabolic whose index touches the
        residues moved by the t generator (slot r for t_r, slot 1 for t_0)."""
        parts = [0] * (ctx.r + 2)
        for j in range(1, ctx.d):
            parts[j] = 1
        parts[ctx.r if gen == "tr" else ctx.d] += 1
        return Composition(parts)

    for i in range(ctx.d + 1):
        s = W.gens[i]
        terms: list[CertTerm] | None = None
        if ctx.variant in ("ji", "ii") and i == ctx.d:
            mu_t = t_partner("tr")
            terms = [CertTerm(a.coeff * b.coeff, a.factors + ("psi:tr",) + b.factors)
                     for a in down[mu_t] for b in up[mu_t]]
        elif ctx.variant in ("ij", "ii") and i == 0:
            mu_t = t_partner("t0")
            terms = [CertTerm(a.coeff * b.coeff, a.factors + ("psi:t0",) + b.factors)
                     for a in down[mu_t] for b in up[mu_t]]
        else:
            # partner composition with parabolic {e, s_i}
            partner = None
            for lam in ctx.compositions:
                if lam.weyl_gens() == frozenset({i}):
                    partner = lam
                    break
            if partner is None:
                raise ChainError(f"no composition with parabolic {{s_{i}}}")
            terms = [CertTerm(a.coeff * b.coeff, a.factors + b.factors)
                     for a in down[partner] for b in up[partner]]
        value = certs.evaluate(terms)
        expansion = ctx.phi_expand(value)
        extra = {k: v for k, v in expansion.items()
                 if k[2] != s.key and not (k[0] == om and k[1] == om and k[2] == W.identity.key)}
        if extra:
            raise ChainError(f"unexpected support isolating phi^{{s_{i}}}: {sorted(extra)}")
        const = expansion.get((om, om, W.identity.key))
        if const is not None and not const.is_zero():
            terms = terms + [CertTerm(-const * t.coeff, t.factors) for t in cert_terms((om, om, ()))]
        lead = expansion.get((om, om, s.key))
        if lead is None or lead.is_zero():
            raise ChainError(f"phi^{{s_{i}}} has zero coefficient in its isolating product")
        if not lead.is_one():
            terms = [CertTerm(t.coeff * lead.inv(), t.factors) for t in terms]
        register(om, om, s, terms)

    # 3. phi^w_{omega,omega} by length recursion
    ball = [w for w in W.ball(maxlen) if W.length(w) >= 2]
    for w in sorted(ball, key=lambda w: W.length(w)):
        word = W.reduced_word(w)
        i, rest = word[0], W.reduced_word(W.word_elt(word[1:]))
        left_key = (om, om, (i,))
        right_key = (om, om, rest)
        prod = [CertTerm(a.coeff * b.coeff, a.factors + b.factors)
                for a in cert_terms(left_key) for b in cert_terms(right_key)]
        value = certs.evaluate(prod)
        expansion = ctx.phi_expand(value)
        terms = list(prod)
        lead = None
        for (lam, mu, gkey), coef in expansion.items():
            if gkey == w.key:
                lead = coef
                continue
            g = WeylElt(W, *gkey)
            lower_key = (om, om, W.reduced_word(g))
            terms.extend(CertTerm(-coef * t.coeff, t.factors)
                         for t in cert_terms(lower_key))
        if lead is None or lead.is_zero():
            raise ChainError(f"product for phi^w lost its leading term at {word}")
        if not lead.is_one():
            terms = [CertTerm(t.coeff * lead.inv(), t.factors) for t in terms]
        register(om, om, w, terms)

    # 4. general phi^g_{lam,mu} with l(g) <= maxlen
    ball_all = W.ball(maxlen)
    for lam in ctx.compositions:
        lgens = lam.weyl_gens()
        for mu in ctx.compositions:
            rgens = mu.weyl_gens()
            reps = [g for g in ball_all
                    if W.is_min_right(g, lgens) and W.is_min_left(g, rgens)]
            for g in sorted(reps, key=lambda g: W.length(g)):
                if (lam, mu, W.reduced_word(g)) in certs.certs:
                    continue
                middle = cert_terms((om, om, W.reduced_word(g)))
                prod = [CertTerm(a.coeff * b.coeff * c.coeff,
                                 a.factors + b.factors + c.factors)
                        for a in up[lam] for b in middle for c in down[mu]]
                value = certs.evaluate(prod)
                expansion = ctx.phi_expand(value)
                terms = list(prod)
                lead = None
                for (l2, m2, gkey), coef in expansion.items():
                    if (l2, m2) != (lam, mu):
                        raise AssertionError("sandwiched product escaped its Hom block")
                    if gkey == g.key:
                        lead = coef
                        continue
                    lower = WeylElt(W, *gkey)
                    lower_key = (lam, mu, W.reduced_word(lower))
                    terms.extend(CertTerm(-coef * t.coeff, t.factors)
                                 for t in cert_terms(lower_key))
                if lead is None or lead.is_zero():
                    raise ChainError(
                        f"no leading coefficient for phi at {tuple(lam)},{tuple(mu)},{W.elt_str(g)}")
                if not lead.is_one():
                    terms = [CertTerm(t.coeff * lead.inv(), t.factors) for t in terms]
                register(lam, mu, g, terms)
    return certs
