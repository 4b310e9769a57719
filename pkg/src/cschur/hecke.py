"""The three-parameter affine Hecke algebra of type C_d in the Coxeter basis.

Elements are finitely supported combinations of basis symbols T_w, w in the
affine Weyl group.  Multiplication by a generator T_i uses only lengths and
the generator's quadratic roots: each generator satisfies

    (T_i - a_i)(T_i - b_i) = 0

with (a_0, b_0) = (q0^-1, -q1), (a_i, b_i) = (q^-1, -q) for 0 < i < d and
(a_d, b_d) = (q1^-1, -q0^-1).  The Bernstein elements X_a are built from the
derived identity T_d = q0^-1 X_d T_{d-1}^-1 ... T_0^-1 ... T_{d-1}^-1, and
the weights q_{s_i} (q1, q, q0^-1) enter the sums T_X = sum q_w^-1 T_w.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from . import cache
from .scalars import Coeffs, ONE, Scalar, ZERO, format_scalar, integer, parse_scalar
from .weyl import WeylElt, WeylGroup


class HeckeElt:
    """Finitely supported map from Weyl-group elements to scalars."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "HeckeAlgebra", terms: dict[WeylElt, Scalar]):
        self.alg = alg
        self.terms = terms

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return HeckeElt(self.alg, out)

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + other.scale(_MINUS_ONE)

    def scale(self, c: Scalar) -> "HeckeElt":
        if c.is_zero():
            return HeckeElt(self.alg, {})
        return HeckeElt(self.alg, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other: "HeckeElt") -> "HeckeElt":
        return self.alg.mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("HeckeElt is not hashable")

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, w: WeylElt) -> Scalar:
        return self.terms.get(w, ZERO)

    def __str__(self) -> str:
        return self.alg.format_elt(self)

    def __repr__(self) -> str:
        return f"HeckeElt({self})"


_MINUS_ONE = integer(-1)


class HeckeAlgebra:
    def __init__(self, group: WeylGroup, coeffs: Coeffs | None = None):
        self.W = group
        self.coeffs = coeffs if coeffs is not None else Coeffs.generic()
        d = group.d
        q, q0, q1 = self.coeffs.q, self.coeffs.q0, self.coeffs.q1
        qi, q0i, q1i = q.inv(), q0.inv(), q1.inv()
        # quadratic roots (a_i, b_i) per generator
        roots = [(q0i, -q1)] + [(qi, -q)] * (d - 1) + [(q1i, -q0i)]
        self.roots: tuple[tuple[Scalar, Scalar], ...] = tuple(roots)
        self.root_sum = tuple(a + b for a, b in roots)
        self.root_prod = tuple(a * b for a, b in roots)
        # T_X weights q_{s_i} and the eigenvalues p_{s_i} of right
        # multiplication on the parabolic sums (two distinct tables)
        self.weights: tuple[Scalar, ...] = (q1,) + (q,) * (d - 1) + (q0i,)
        self.weights_inv: tuple[Scalar, ...] = tuple(w.inv() for w in self.weights)
        self.p_values: tuple[Scalar, ...] = (q0i,) + (qi,) * (d - 1) + (q1i,)
        self._qw: dict[tuple, Scalar] = {group.identity.key: ONE}
        self._geninv: dict[int, HeckeElt] = {}
        self._X: dict[int, HeckeElt] = {}
        self._Xinv: dict[int, HeckeElt] = {}

    # -- constructors

    def zero(self) -> HeckeElt:
        return HeckeElt(self, {})

    def one(self) -> HeckeElt:
        return HeckeElt(self, {self.W.identity: ONE})

    def T(self, w: WeylElt | Sequence[int]) -> HeckeElt:
        """T_w for a group element, or the product T_{i_1}...T_{i_k} for a word."""
        if isinstance(w, WeylElt):
            return HeckeElt(self, {w: ONE})
        return self.mul_word(self.one(), w)

    def elt(self, terms: Mapping[WeylElt, Scalar]) -> HeckeElt:
        return HeckeElt(self, {w: c for w, c in terms.items() if not c.is_zero()})

    # -- multiplication

    def mul_gen(self, h: HeckeElt, i: int, side: str = "right") -> HeckeElt:
        """h * T_i (or T_i * h), resolved by lengths and the quadratic roots."""
        W = self.W
        s = W.gens[i]
        ab_sum = self.root_sum[i]
        ab_prod = self.root_prod[i]
        out: dict[WeylElt, Scalar] = {}

        def put(w: WeylElt, c: Scalar) -> None:
            cur = out.get(w)
            cur = c if cur is None else cur + c
            if cur.is_zero():
                out.pop(w, None)
            else:
                out[w] = cur

        for w, c in h.terms.items():
            ws = W.multiply(w, s) if side == "right" else W.multiply(s, w)
            if W.length(ws) > W.length(w):
                put(ws, c)
            else:
                put(w, c * ab_sum)
                put(ws, -(c * ab_prod))
        return HeckeElt(self, out)

    def mul_word(self, h: HeckeElt, letters: Iterable[int], side: str = "right") -> HeckeElt:
        if side == "right":
            for i in letters:
                h = self.mul_gen(h, i, "right")
            return h
        for i in reversed(tuple(letters)):
            h = self.mul_gen(h, i, "left")
        return h

    def mul(self, h1: HeckeElt, h2: HeckeElt) -> HeckeElt:
        """General product, expanding h2 along canonical reduced words."""
        out = self.zero()
        for w, c in h2.terms.items():
            out = out + self.mul_word(h1, self.W.reduced_word(w)).scale(c)
        return out

    def gen_inverse(self, i: int) -> HeckeElt:
        """T_i^-1 = ((a+b) - T_i) / (a b)."""
        cached = self._geninv.get(i)
        if cached is None:
            ab = self.root_prod[i]
            cached = self.elt({
                self.W.identity: self.root_sum[i] / ab,
                self.W.gens[i]: -ab.inv(),
            })
            self._geninv[i] = cached
        return cached

    # -- Bernstein elements

    def X(self, a: int) -> HeckeElt:
        """The commuting invertible element X_a, 1 <= a <= d."""
        d = self.W.d
        if not 1 <= a <= d:
            raise IndexError(f"X index {a} out of range 1..{d}")
        cached = self._X.get(a)
        if cached is not None:
            return cached
        stored = cache.load_json(self._cache_key(a))
        if stored is not None:
            elt = self._elt_from_cache(stored)
        elif a == d:
            word = [d] + list(range(d - 1, 0, -1)) + [0] + list(range(1, d))
            elt = self.T(word).scale(self.coeffs.q0)
        else:
            inv = self.gen_inverse(a)
            elt = self.mul(self.mul(inv, self.X(a + 1)), inv)
        if stored is None:
            cache.save_json(self._cache_key(a), self._elt_to_cache(elt))
        self._X[a] = elt
        return elt

    def _cache_key(self, a: int) -> str:
        return f"X{a}-d{self.W.d}-n{self.W.n}-{self.coeffs.name}"

    def _elt_to_cache(self, h: HeckeElt) -> list:
        return [[list(self.W.reduced_word(w)), format_scalar(c)]
                for w, c in sorted(h.terms.items(), key=lambda t: t[0].key)]

    def _elt_from_cache(self, data: list) -> HeckeElt:
        return self.elt({self.W.word_elt(word): parse_scalar(text) for word, text in data})

    def X_inv(self, a: int) -> HeckeElt:
        d = self.W.d
        if not 1 <= a <= d:
            raise IndexError(f"X index {a} out of range 1..{d}")
        cached = self._Xinv.get(a)
        if cached is not None:
            return cached
        if a == d:
            elt = self.one()
            for i in list(range(d - 1, 0, -1)) + [0] + list(range(1, d)):
                elt = self.mul(elt, self.gen_inverse(i))
            elt = self.mul(elt, self.gen_inverse(d)).scale(self.coeffs.q0.inv())
        else:
            ta = self.T([a])
            elt = self.mul(self.mul(ta, self.X_inv(a + 1)), ta)
        self._Xinv[a] = elt
        return elt

    def build_Td(self) -> HeckeElt:
        """T_d rebuilt from X_d and generator inverses; equals the Coxeter T_{s_d}."""
        elt = self.X(self.W.d)
        for i in list(range(self.W.d - 1, 0, -1)) + [0] + list(range(1, self.W.d)):
            elt = self.mul(elt, self.gen_inverse(i))
        return elt.scale(self.coeffs.q0.inv())

    # -- weights and parabolic sums

    def q_w(self, w: WeylElt) -> Scalar:
        cached = self._qw.get(w.key)
        if cached is None:
            cached = ONE
            for i in self.W.reduced_word(w):
                cached = cached * self.weights[i]
            self._qw[w.key] = cached
        return cached

    def T_X(self, elems: Iterable[WeylElt]) -> HeckeElt:
        """T_X = sum over the set of q_w^-1 T_w."""
        return self.elt({w: self.q_w(w).inv() for w in elems})

    def x_parabolic(self, gens: Iterable[int]) -> HeckeElt:
        return self.T_X(self.W.parabolic(gens))

    # -- text form

    def format_elt(self, h: HeckeElt) -> str:
        if not h.terms:
            return "0"
        W = self.W
        items = sorted(h.terms.items(), key=lambda t: (W.length(t[0]), t[0].key))
        parts = []
        for w, c in items:
            basis = f"T[{W.elt_str(w) if not w.is_identity() else ''}]"
            if c.is_one():
                parts.append(basis)
            else:
                cs = format_scalar(c)
                if ("+" in cs[1:] or "-" in cs[1:] or "/" in cs):
                    cs = f"({cs})"
                parts.append(f"{cs}*{basis}")
        return " + ".join(parts)
