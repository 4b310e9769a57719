"""The tensor module V^(x)d and its two commuting actions.

Basis vectors M_f are indexed by f in Z^d.  The Hecke algebra acts on the
right: X_a shifts coordinate a down by n, the braid generators T_i act by
the Kazhdan-Lusztig-style three-case formula with geometric-sum correction
operators, and T_0 acts on the first tensor factor through an eight-branch
single-factor table.  T_d acts through its defining composite
q0^-1 X_d T_{d-1}^-1 ... T_0^-1 ... T_{d-1}^-1.

The quantum side acts on the left: single-factor operators E_i, F_i, D_a
(with per-variant residue tables) are lifted to the tensor power through
the comultiplication, and the coideal generators e_i, f_i, h_a, k_i, t_0,
t_r are the standard combinations of those lifts.

Variants restrict the allowed residues mod n of the indices:

* "jj" - all of Z,
* "ji" - drop residue r+1,
* "ij" - drop residue 0,
* "ii" - drop both.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .hecke import HeckeElt
from .scalars import Coeffs, ONE, Scalar, ZERO, format_scalar, integer

Index = tuple[int, ...]
Terms = dict[Index, Scalar]

VARIANTS = ("jj", "ji", "ij", "ii")


class SupportError(ValueError):
    """A vector touches a residue excluded by the variant subspace."""


class TensorVec:
    __slots__ = ("mod", "terms")

    def __init__(self, mod: "TensorModule", terms: Terms):
        self.mod = mod
        self.terms = terms

    def __add__(self, other: "TensorVec") -> "TensorVec":
        out = dict(self.terms)
        for f, c in other.terms.items():
            s = out.get(f)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(f, None)
            else:
                out[f] = s
        return TensorVec(self.mod, out)

    def __sub__(self, other: "TensorVec") -> "TensorVec":
        return self + other.scale(_MINUS_ONE)

    def scale(self, c: Scalar) -> "TensorVec":
        if c.is_zero():
            return TensorVec(self.mod, {})
        return TensorVec(self.mod, {f: v * c for f, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorVec):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("TensorVec is not hashable")

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, f: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(f), ZERO)

    def __str__(self) -> str:
        return self.mod.format_vec(self)

    def __repr__(self) -> str:
        return f"TensorVec({self})"


_MINUS_ONE = integer(-1)


class LinOp:
    """A linear operator on the tensor module, defined on basis vectors."""

    __slots__ = ("mod", "fn")

    def __init__(self, mod: "TensorModule", fn: Callable[[Index], list[tuple[Index, Scalar]]]):
        self.mod = mod
        self.fn = fn

    def __call__(self, vec: TensorVec) -> TensorVec:
        out: Terms = {}
        for f, c in vec.terms.items():
            for g, w in self.fn(f):
                s = out.get(g)
                cw = c * w
                s = cw if s is None else s + cw
                if s.is_zero():
                    out.pop(g, None)
                else:
                    out[g] = s
        return TensorVec(self.mod, out)

    def on_basis(self, f: Sequence[int]) -> TensorVec:
        return self(self.mod.basis(f))

    def __matmul__(self, other: "LinOp") -> "LinOp":
        def fn(f: Index):
            return list(self(other.on_basis(f)).terms.items())
        return LinOp(self.mod, fn)

    def __add__(self, other: "LinOp") -> "LinOp":
        def fn(f: Index):
            return list((self.on_basis(f) + other.on_basis(f)).terms.items())
        return LinOp(self.mod, fn)

    def __sub__(self, other: "LinOp") -> "LinOp":
        def fn(f: Index):
            return list((self.on_basis(f) - other.on_basis(f)).terms.items())
        return LinOp(self.mod, fn)

    def scale(self, c: Scalar) -> "LinOp":
        def fn(f: Index):
            return [(g, w * c) for g, w in self.fn(f)]
        return LinOp(self.mod, fn)

    def __pow__(self, k: int) -> "LinOp":
        if k < 1:
            raise ValueError("only positive operator powers")
        out = self
        for _ in range(k - 1):
            out = out @ self
        return out


def _geom(x: int, y: int) -> list[tuple[int, int, int]]:
    """(z^x w^y - z^y w^x)/(w - z) as monomials (z-exp, w-exp, sign)."""
    if x == y:
        return []
    if x < y:
        return [(x + t, y - 1 - t, 1) for t in range(y - x)]
    return [(y + t, x - 1 - t, -1) for t in range(x - y)]


class TensorModule:
    def __init__(self, r: int, d: int, coeffs: Coeffs | None = None, variant: str = "jj"):
        if r < 1 or d < 1:
            raise ValueError("need r >= 1 and d >= 1")
        if variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if variant == "ii" and r < 2:
            raise ValueError("variant ii needs r >= 2")
        self.r = r
        self.d = d
        self.n = 2 * r + 2
        self.variant = variant
        self.coeffs = coeffs if coeffs is not None else Coeffs.generic()
        c = self.coeffs
        q, q0, q1 = c.q, c.q0, c.q1
        self._q = q
        self._qi = q.inv()
        self._q0i = q0.inv()
        self._c01 = q0.inv() * q1            # q0^-1 q1
        self._b = q1 - q0.inv()              # q1 - q0^-1
        self._cm1 = self._c01 - ONE          # q0^-1 q1 - 1
        self._qq = self._qi - q              # q^-1 - q
        self._t0inv_t = q0 * q1.inv()        # T_0^-1 = q0 q1^-1 T_0 + (q0 - q1^-1)
        self._t0inv_e = q0 - q1.inv()
        self._tinv_e = q - q.inv()           # T_i^-1 = T_i + (q - q^-1)
        self._q1 = q1
        self._q0 = q0
        self._forbidden = {
            "jj": frozenset(),
            "ji": frozenset({(self.r + 1) % self.n}),
            "ij": frozenset({0}),
            "ii": frozenset({0, (self.r + 1) % self.n}),
        }[variant]

    # -- indices and vectors

    def residue(self, j: int) -> tuple[int, int]:
        """Unique (k, c) with j = k + c*n and -r <= k <= r+1."""
        c = (j + self.r) // self.n
        return j - c * self.n, c

    def allowed(self, f: Sequence[int]) -> bool:
        return all((j % self.n) not in self._forbidden for j in f)

    def zero(self) -> TensorVec:
        return TensorVec(self, {})

    def basis(self, f: Sequence[int]) -> TensorVec:
        f = tuple(f)
        if len(f) != self.d:
            raise ValueError(f"index length {len(f)} != d = {self.d}")
        if not self.allowed(f):
            raise SupportError(f"index {f} uses a residue excluded by variant {self.variant!r}")
        return TensorVec(self, {f: ONE})

    def vec(self, terms: dict[Sequence[int], Scalar]) -> TensorVec:
        out: Terms = {}
        for f, c in terms.items():
            if not c.is_zero():
                out[tuple(f)] = c
        for f in out:
            if not self.allowed(f):
                raise SupportError(f"index {f} excluded by variant {self.variant!r}")
        return TensorVec(self, out)

    def window_indices(self, mult: int = 2) -> list[Index]:
        """All basis indices with coordinates in [-mult*n, mult*n], variant-filtered."""
        lim = mult * self.n
        out: list[Index] = []

        def rec(prefix: tuple[int, ...]):
            if len(prefix) == self.d:
                out.append(prefix)
                return
            for j in range(-lim, lim + 1):
                if (j % self.n) not in self._forbidden:
                    rec(prefix + (j,))
        rec(())
        return out

    # -- Hecke side (right action)

    def act_X(self, vec: TensorVec, a: int, power: int = 1) -> TensorVec:
        """M_f X_a = M_{f - n e_a}; negative power inverts."""
        if not 1 <= a <= self.d:
            raise IndexError(f"X index {a} out of range 1..{self.d}")
        shift = -self.n * power
        p = a - 1
        return TensorVec(self, {f[:p] + (f[p] + shift,) + f[p + 1:]: c
                                for f, c in vec.terms.items()})

    def _t0_single(self, j: int) -> list[tuple[int, Scalar]]:
        """The single-factor T_0 table; returns (index, coeff) pairs."""
        n, r = self.n, self.r
        k, j0 = self.residue(j)
        A, B, C = self._c01, self._b, self._cm1
        out: list[tuple[int, Scalar]] = []
        if k == r + 1:
            if j0 >= 0:
                out.append((-k - n * j0, A))
                for l in range(1, j0 + 1):
                    out.append((k + n * (j0 - 2 * l), B))
                    out.append((k + n * (j0 + 1 - 2 * l), C))
            else:
                out.append((-k - n * j0, ONE))
                for l in range(1, -j0 + 1):
                    out.append((k + n * (-j0 - 2 * l), -B))
                for l in range(2, -j0 + 1):
                    out.append((k + n * (-j0 + 1 - 2 * l), -C))
        elif 0 < k <= r:
            if j0 >= 0:
                out.append((-k - n * j0, ONE))
                for l in range(1, j0 + 1):
                    out.append((k + n * (j0 - 2 * l), B))
                    out.append((k + n * (j0 + 1 - 2 * l), C))
            else:
                out.append((-k - n * j0, ONE))
                for l in range(1, -j0 + 1):
                    out.append((k + n * (-j0 - 2 * l), -B))
                    out.append((k + n * (-j0 + 1 - 2 * l), -C))
        elif k == 0:
            if j0 >= 0:
                out.append((-n * j0, self._q0i))
                for l in range(1, j0 + 1):
                    out.append((n * (j0 - 2 * l), B))
                    out.append((n * (j0 + 1 - 2 * l), C))
            else:
                out.append((-n * j0, self._q1))
                for l in range(0, -j0 + 1):
                    out.append((n * (-j0 - 2 * l), -B))
                for l in range(1, -j0 + 1):
                    out.append((n * (-j0 + 1 - 2 * l), -C))
        else:  # -r <= k < 0
            if j0 > 0:
                out.append((-k - n * j0, A))
                for l in range(1, j0):
                    out.append((k + n * (j0 - 2 * l), B))
                for l in range(1, j0 + 1):
                    out.append((k + n * (j0 + 1 - 2 * l), C))
            else:
                out.append((-k - n * j0, A))
                for l in range(0, -j0 + 1):
                    out.append((k + n * (-j0 - 2 * l), -B))
                for l in range(1, -j0 + 1):
                    out.append((k + n * (-j0 + 1 - 2 * l), -C))
        return out

    def act_T0(self, vec: TensorVec) -> TensorVec:
        out: Terms = {}
        for f, c in vec.terms.items():
            rest = f[1:]
            for j, w in self._t0_single(f[0]):
                g = (j,) + rest
                s = out.get(g)
                cw = c * w
                s = cw if s is None else s + cw
                if s.is_zero():
                    out.pop(g, None)
                else:
                    out[g] = s
        return TensorVec(self, out)

    def act_Ti(self, vec: TensorVec, i: int) -> TensorVec:
        """The braid-generator action, 1 <= i <= d-1."""
        if not 1 <= i <= self.d - 1:
            raise IndexError(f"T index {i} out of range 1..{self.d - 1}")
        n = self.n
        p = i - 1
        out: Terms = {}

        def put(g: Index, c: Scalar):
            s = out.get(g)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(g, None)
            else:
                out[g] = s

        for f, c in vec.terms.items():
            ri, ci = self.residue(f[p])
            rj, cj = self.residue(f[p + 1])
            swapped = f[:p] + (f[p + 1], f[p]) + f[p + 2:]
            if rj > ri:
                put(swapped, c)
                corr = [(a + 1, b, s) for a, b, s in _geom(cj, ci)]
            elif rj == ri:
                put(swapped, c * self._qi)
                corr = [(a + 1, b, s) for a, b, s in _geom(cj, ci)]
            else:
                put(swapped, c)
                corr = _geom(cj, ci + 1)
            for a, b, s in corr:
                g = f[:p] + (ri + n * a, rj + n * b) + f[p + 2:]
                put(g, c * self._qq if s > 0 else -(c * self._qq))
        return TensorVec(self, out)

    def act_T0_inv(self, vec: TensorVec) -> TensorVec:
        return self.act_T0(vec).scale(self._t0inv_t) + vec.scale(self._t0inv_e)

    def act_Ti_inv(self, vec: TensorVec, i: int) -> TensorVec:
        return self.act_Ti(vec, i) + vec.scale(self._tinv_e)

    def act_Td(self, vec: TensorVec) -> TensorVec:
        """T_d through its defining composite with X_d and generator inverses."""
        d = self.d
        v = self.act_X(vec, d)
        for i in range(d - 1, 0, -1):
            v = self.act_Ti_inv(v, i)
        v = self.act_T0_inv(v)
        for i in range(1, d):
            v = self.act_Ti_inv(v, i)
        return v.scale(self._q0i)

    def act_gen(self, vec: TensorVec, i: int) -> TensorVec:
        if i == 0:
            return self.act_T0(vec)
        if i == self.d:
            return self.act_Td(vec)
        return self.act_Ti(vec, i)

    def act_word(self, vec: TensorVec, letters: Iterable[int]) -> TensorVec:
        for i in letters:
            vec = self.act_gen(vec, i)
        return vec

    def act_hecke(self, vec: TensorVec, h: HeckeElt) -> TensorVec:
        out = self.zero()
        W = h.alg.W
        if (W.d, W.n) != (self.d, self.n):
            raise ValueError("Hecke algebra parameters do not match the module")
        for w, c in h.terms.items():
            out = out + self.act_word(vec, W.reduced_word(w)).scale(c)
        return out

    def hecke_op(self, name: str) -> LinOp:
        """Named right-action operators: 'T0'..'Td', 'X1'.., 'X1inv'.."""
        if name.startswith("T"):
            i = int(name[1:])
            return LinOp(self, lambda f, i=i: list(self.act_gen(self.basis(f), i).terms.items()))
        if name.startswith("X"):
            body = name[1:]
            inv = body.endswith("inv")
            a = int(body[:-3] if inv else body)
            return LinOp(self, lambda f, a=a, p=(-1 if inv else 1):
                         list(self.act_X(self.basis(f), a, p).terms.items()))
        raise ValueError(f"unknown Hecke operator {name!r}")

    # -- quantum side (left action)

    def _E_map(self, i: int) -> tuple[int, int]:
        """Residue source and index shift of the single-factor E_i."""
        n, r, v = self.n, self.r, self.variant
        i %= n
        self._check_gen_index(i)
        if i == r and v in ("ji", "ii"):
            return (r + 2) % n, -2
        if i == 0 and v in ("ij", "ii"):
            return 1, -2
        return (i + 1) % n, -1

    def _F_map(self, i: int) -> tuple[int, int]:
        n, r, v = self.n, self.r, self.variant
        i %= n
        self._check_gen_index(i)
        if i == r and v in ("ji", "ii"):
            return r, 2
        if i == 0 and v in ("ij", "ii"):
            return (n - 1) % n, 2
        return i, 1

    def _K_pair(self, i: int) -> tuple[int, int]:
        n, r, v = self.n, self.r, self.variant
        i %= n
        self._check_gen_index(i)
        if i == r and v in ("ji", "ii"):
            return r, (r + 2) % n
        if i == 0 and v in ("ij", "ii"):
            return n - 1, 1
        return i, (i + 1) % n

    def _check_gen_index(self, i: int) -> None:
        v, n, r = self.variant, self.n, self.r
        if v in ("ji", "ii") and i == (r + 1) % n:
            raise ValueError(f"index {i} is not a generator index for variant {v!r}")
        if v in ("ij", "ii") and i == (n - 1) % n:
            raise ValueError(f"index {i} is not a generator index for variant {v!r}")

    def _check_support(self, f: Index) -> None:
        if not self.allowed(f):
            raise SupportError(f"index {f} excluded by variant {self.variant!r}")

    def lift_E(self, i: int) -> LinOp:
        src, shift = self._E_map(i)
        ki, kn = self._K_pair(i)

        def fn(f: Index):
            self._check_support(f)
            out = []
            for k in range(self.d):
                if f[k] % self.n == src:
                    e = 0
                    for m in range(k + 1, self.d):
                        rm = f[m] % self.n
                        e -= (rm == ki) - (rm == kn)
                    out.append((f[:k] + (f[k] + shift,) + f[k + 1:],
                                Scalar.monomial(1, q=e)))
            return out
        return LinOp(self, fn)

    def lift_F(self, i: int) -> LinOp:
        src, shift = self._F_map(i)
        ki, kn = self._K_pair(i)

        def fn(f: Index):
            self._check_support(f)
            out = []
            for k in range(self.d):
                if f[k] % self.n == src:
                    e = 0
                    for m in range(k):
                        rm = f[m] % self.n
                        e += (rm == ki) - (rm == kn)
                    out.append((f[:k] + (f[k] + shift,) + f[k + 1:],
                                Scalar.monomial(1, q=e)))
            return out
        return LinOp(self, fn)

    def lift_K(self, i: int, power: int = 1) -> LinOp:
        ki, kn = self._K_pair(i)

        def fn(f: Index):
            self._check_support(f)
            e = 0
            for j in f:
                rj = j % self.n
                e += (rj == ki) - (rj == kn)
            return [(f, Scalar.monomial(1, q=e * power))]
        return LinOp(self, fn)

    def lift_D(self, a: int, power: int = 1) -> LinOp:
        a %= self.n

        def fn(f: Index):
            self._check_support(f)
            e = sum(1 for j in f if j % self.n == a)
            return [(f, Scalar.monomial(1, q=e * power))]
        return LinOp(self, fn)

    def identity_op(self) -> LinOp:
        return LinOp(self, lambda f: [(f, ONE)])

    def coideal_op(self, name: str) -> LinOp:
        """Coideal generator actions by name: 'e0', 'f2', 'h1', 'h1inv',
        'k0', 'k0inv', 't0', 'tr'."""
        c = self.coeffs
        n, r, v = self.n, self.r, self.variant
        inv = name.endswith("inv")
        base = name[:-3] if inv else name
        kind, idx = base[0], base[1:]
        if kind == "t":
            if inv:
                raise ValueError("t generators are not invertible by table")
            if idx == "r":
                if v not in ("ji", "ii"):
                    raise ValueError(f"t_r is not a generator for variant {v!r}")
                coeff = (ONE - c.q0 * c.q1.inv()) / (c.q - c.q.inv())
                return (self.lift_E(r)
                        + (self.lift_F(r) @ self.lift_K(r, -1)).scale(c.q * c.q0 * c.q1.inv())
                        + self.lift_K(r, -1).scale(coeff))
            if idx == "0":
                if v not in ("ij", "ii"):
                    raise ValueError(f"t_0 is not a generator for variant {v!r}")
                coeff = (c.q1 - c.q0.inv()) / (c.q - c.q.inv())
                return (self.lift_E(0)
                        + (self.lift_F(0) @ self.lift_K(0, -1)).scale(c.q * c.q0.inv() * c.q1)
                        + self.lift_K(0, -1).scale(coeff))
            raise ValueError(f"unknown t generator {name!r}")
        i = int(idx)
        if kind == "h":
            if v != "jj":
                raise ValueError("h generators exist only in the full (jj) setting")
            if not 0 <= i <= r + 1:
                raise IndexError(f"h index {i} out of range 0..{r + 1}")
            return self.lift_D(i, -1 if inv else 1) @ self.lift_D((n - i) % n, -1 if inv else 1)
        if kind == "k":
            self._check_k_range(i)
            p = -1 if inv else 1
            return self.lift_K(i, p) @ self.lift_K((n - 1 - i) % n, -p)
        if inv:
            raise ValueError(f"{kind} generators are not invertible by table")
        self._check_ef_range(i)
        if kind == "e":
            if i == 0 and v in ("jj", "ji"):
                return self.lift_E(0) + (self.lift_F(n - 1) @ self.lift_K(0, -1)).scale(c.q0.inv())
            if i == r and v in ("jj", "ij"):
                return self.lift_E(r) + (self.lift_F(r + 1) @ self.lift_K(r, -1)).scale(c.q.inv())
            return self.lift_E(i) + self.lift_F(n - 1 - i) @ self.lift_K(i, -1)
        if kind == "f":
            if i == 0 and v in ("jj", "ji"):
                return self.lift_E(n - 1) + (self.lift_F(0) @ self.lift_K(n - 1, -1)).scale(c.q1 * c.q.inv())
            if i == r and v in ("jj", "ij"):
                return self.lift_E(r + 1) + (self.lift_F(r) @ self.lift_K(r + 1, -1)).scale(c.q0 * c.q1.inv())
            return self.lift_E(n - 1 - i) + self.lift_F(i) @ self.lift_K(n - 1 - i, -1)
        raise ValueError(f"unknown generator {name!r}")

    def _check_ef_range(self, i: int) -> None:
        lo, hi = {"jj": (0, self.r), "ji": (0, self.r - 1),
                  "ij": (1, self.r), "ii": (1, self.r - 1)}[self.variant]
        if not lo <= i <= hi:
            raise IndexError(f"e/f index {i} out of range {lo}..{hi} for variant {self.variant!r}")

    def _check_k_range(self, i: int) -> None:
        lo, hi = {"jj": (0, self.r), "ji": (0, self.r - 1),
                  "ij": (1, self.r), "ii": (1, self.r - 1)}[self.variant]
        if not lo <= i <= hi:
            raise IndexError(f"k index {i} out of range {lo}..{hi} for variant {self.variant!r}")

    def coideal_generator_names(self) -> list[str]:
        lo, hi = {"jj": (0, self.r), "ji": (0, self.r - 1),
                  "ij": (1, self.r), "ii": (1, self.r - 1)}[self.variant]
        names = []
        for i in range(lo, hi + 1):
            names.append(f"e{i}")
            names.append(f"f{i}")
        if self.variant == "jj":
            names.extend(f"h{a}" for a in range(self.r + 2))
        else:
            names.extend(f"k{i}" for i in range(lo, hi + 1))
        if self.variant in ("ji", "ii"):
            names.append("tr")
        if self.variant in ("ij", "ii"):
            names.append("t0")
        return names

    # -- specialization and text form

    def map_coeffs(self, vec: TensorVec, coeffs: Coeffs) -> TensorVec:
        return TensorVec(self, {f: coeffs.map_scalar(c) for f, c in vec.terms.items()
                                if not coeffs.map_scalar(c).is_zero()})

    def format_vec(self, vec: TensorVec) -> str:
        if not vec.terms:
            return "0"
        parts = []
        for f in sorted(vec.terms):
            c = vec.terms[f]
            basis = f"v[{f[0]}]" if self.d == 1 else "M[" + ",".join(map(str, f)) + "]"
            if c.is_one():
                parts.append(basis)
            else:
                cs = format_scalar(c)
                if "+" in cs[1:] or "-" in cs[1:] or "/" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{basis}")
        return " + ".join(parts)
