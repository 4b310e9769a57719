"""Exact arithmetic over the rational function field Q(q, q0, q1).

A scalar is a reduced fraction of integer-coefficient polynomials in the
three indeterminates.  Laurent-style negative powers are stored by moving
the offending monomial into the denominator, so both halves of the fraction
always have exponents in N^3.

Canonical form:

* gcd(numerator, denominator) = 1 over Z (integer content included), and
* the denominator's leading coefficient is positive, where "leading" is
  taken in the lexicographic monomial order q > q0 > q1.

Equality and hashing are structural on the canonical form.  Scalars are
immutable and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd as igcd
from typing import Iterator, Mapping

Mono = tuple[int, int, int]
Poly = dict[Mono, int]

_M1: Mono = (0, 0, 0)
VARS = ("q", "q0", "q1")


class SpecializationError(ZeroDivisionError):
    """A parameter substitution made a denominator vanish identically."""


# ---------------------------------------------------------------------------
# polynomial layer (plain dicts, never mutated once inside a Scalar)
# ---------------------------------------------------------------------------

def p_zero() -> Poly:
    return {}


def p_int(k: int) -> Poly:
    return {_M1: k} if k else {}


def p_mono(coeff: int, e: Mono) -> Poly:
    return {e: coeff} if coeff else {}


def p_add(f: Poly, g: Poly) -> Poly:
    if not f:
        return dict(g)
    if not g:
        return dict(f)
    out = dict(f)
    for m, c in g.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def p_neg(f: Poly) -> Poly:
    return {m: -c for m, c in f.items()}


def p_sub(f: Poly, g: Poly) -> Poly:
    return p_add(f, p_neg(g))


def p_mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return {}
    if len(f) == 1:
        (mf, cf), = f.items()
        return {(mf[0] + m[0], mf[1] + m[1], mf[2] + m[2]): cf * c for m, c in g.items()}
    if len(g) == 1:
        return p_mul(g, f)
    out: Poly = {}
    for mf, cf in f.items():
        for mg, cg in g.items():
            m = (mf[0] + mg[0], mf[1] + mg[1], mf[2] + mg[2])
            s = out.get(m, 0) + cf * cg
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def p_lead(f: Poly) -> tuple[Mono, int]:
    """Leading term in the lex order q > q0 > q1 (largest exponent tuple)."""
    m = max(f)
    return m, f[m]


def p_content(f: Poly) -> int:
    c = 0
    for v in f.values():
        c = igcd(c, v)
        if c == 1:
            break
    return c


def p_min_exps(f: Poly) -> Mono:
    it: Iterator[Mono] = iter(f)
    a, b, c = next(it)
    for m in it:
        a = min(a, m[0])
        b = min(b, m[1])
        c = min(c, m[2])
    return (a, b, c)


def p_shift(f: Poly, e: Mono) -> Poly:
    """Multiply by the monomial with exponents e (components may be negative)."""
    if e == _M1:
        return dict(f)
    return {(m[0] + e[0], m[1] + e[1], m[2] + e[2]): c for m, c in f.items()}


def p_int_div(f: Poly, k: int) -> Poly:
    if k == 1:
        return dict(f)
    out = {}
    for m, c in f.items():
        q, r = divmod(c, k)
        if r:
            raise ArithmeticError("inexact integer division of polynomial")
        out[m] = q
    return out


# -- exact multivariate division and gcd -------------------------------------

def _degree_in(f: Poly, v: int) -> int:
    return max(m[v] for m in f) if f else -1


def _main_var(f: Poly, g: Poly) -> int | None:
    for v in range(3):
        if _degree_in(f, v) > 0 or _degree_in(g, v) > 0:
            return v
    return None


def _to_dense(f: Poly, v: int) -> list[Poly]:
    """Coefficient list in variable v (index = exponent), entries are Polys."""
    out: list[Poly] = [dict() for _ in range(_degree_in(f, v) + 1)]
    for m, c in f.items():
        mm = list(m)
        k = mm[v]
        mm[v] = 0
        out[k][tuple(mm)] = c
    return out


def _from_dense(lst: list[Poly], v: int) -> Poly:
    out: Poly = {}
    for k, coeff in enumerate(lst):
        for m, c in coeff.items():
            mm = list(m)
            mm[v] = k
            out[tuple(mm)] = c
    return out


def _dense_trim(lst: list[Poly]) -> list[Poly]:
    while lst and not lst[-1]:
        lst.pop()
    return lst


def p_divexact(f: Poly, g: Poly) -> Poly:
    """Exact quotient f / g; raises ArithmeticError if g does not divide f."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return {}
    if len(g) == 1:
        (mg, cg), = g.items()
        out: Poly = {}
        for m, c in f.items():
            e = (m[0] - mg[0], m[1] - mg[1], m[2] - mg[2])
            if min(e) < 0:
                raise ArithmeticError("inexact monomial division")
            q, r = divmod(c, cg)
            if r:
                raise ArithmeticError("inexact coefficient division")
            out[e] = q
        return out
    v = _main_var(f, g)
    if v is None:
        # both constants, handled by the monomial branch above
        raise ArithmeticError("inexact division")
    F = _to_dense(f, v)
    G = _to_dense(g, v)
    if len(F) < len(G):
        raise ArithmeticError("inexact division (degree)")
    lead_g = G[-1]
    Q: list[Poly] = [dict() for _ in range(len(F) - len(G) + 1)]
    R = [dict(c) for c in F]
    for k in range(len(F) - len(G), -1, -1):
        _dense_trim(R)
        if len(R) < k + len(G):
            continue
        qc = p_divexact(R[k + len(G) - 1], lead_g)
        if qc:
            Q[k] = qc
            for j, gc in enumerate(G):
                if gc:
                    R[k + j] = p_sub(R[k + j], p_mul(qc, gc))
    _dense_trim(R)
    if R:
        raise ArithmeticError("inexact division (remainder)")
    return _from_dense(Q, v)


def _dense_content(lst: list[Poly]) -> Poly:
    g: Poly = {}
    for c in lst:
        if c:
            g = p_gcd(g, c)
            if len(g) == 1 and g.get(_M1) == 1:
                break
    return g


def _dense_primitive(lst: list[Poly]) -> tuple[Poly, list[Poly]]:
    cont = _dense_content(lst)
    if len(cont) == 1 and cont.get(_M1) == 1:
        return cont, lst
    return cont, [p_divexact(c, cont) if c else {} for c in lst]


def _dense_pseudo_rem(F: list[Poly], G: list[Poly]) -> list[Poly]:
    """Pseudo-remainder of F by G in the main variable (coefficients Polys)."""
    R = [dict(c) for c in F]
    lead_g = G[-1]
    while True:
        _dense_trim(R)
        if len(R) < len(G):
            return R
        k = len(R) - len(G)
        lead_r = R[-1]
        R = [p_mul(lead_g, c) for c in R]
        for j, gc in enumerate(G):
            if gc:
                R[k + j] = p_sub(R[k + j], p_mul(lead_r, gc))
        del R[-1]


class _HeuristicFailed(Exception):
    pass


def _p_eval(f: Poly, v: int, xi: int) -> Poly:
    out: Poly = {}
    for m, c in f.items():
        mm = list(m)
        k = mm[v]
        mm[v] = 0
        key = tuple(mm)
        s = out.get(key, 0) + c * xi ** k
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def _p_balanced_digit(f: Poly, xi: int) -> Poly:
    out: Poly = {}
    for m, c in f.items():
        r = c % xi
        if 2 * r > xi:
            r -= xi
        if r:
            out[m] = r
    return out


def _p_max_norm(f: Poly) -> int:
    return max(abs(c) for c in f.values()) if f else 0


def _heu_gcd(f: Poly, g: Poly, vs: tuple[int, ...]) -> Poly:
    """Evaluation-reconstruction gcd; verified divisor or _HeuristicFailed.

    Integer contents are split off at every level: the evaluated image of the
    outer gcd shows up as integer content of the inner polynomials, so it must
    be carried through the recursion rather than stripped.
    """
    if not vs:
        return p_int(igcd(f.get(_M1, 0), g.get(_M1, 0)))
    cf, cg = p_content(f), p_content(g)
    if cf > 1:
        f = p_int_div(f, cf)
    if cg > 1:
        g = p_int_div(g, cg)
    cc = igcd(cf, cg)
    v = vs[0]
    xi = 2 * max(_p_max_norm(f), _p_max_norm(g)) + 29
    for _ in range(6):
        gamma = _heu_gcd(_p_eval(f, v, xi), _p_eval(g, v, xi), vs[1:])
        # xi-adic reconstruction with balanced digits
        cand: Poly = {}
        k = 0
        while gamma and k <= max(_degree_in(f, v), _degree_in(g, v)):
            digit = _p_balanced_digit(gamma, xi)
            for m, c in digit.items():
                mm = list(m)
                mm[v] = k
                cand[tuple(mm)] = c
            gamma = {m: c // xi for m, c in p_sub(gamma, digit).items() if c // xi}
            k += 1
        if not gamma and cand:
            kc = p_content(cand)
            if kc > 1:
                cand = p_int_div(cand, kc)
            try:
                p_divexact(f, cand)
                p_divexact(g, cand)
                return p_mul(p_int(cc), cand) if cc > 1 else cand
            except ArithmeticError:
                pass
        xi = xi * 73 // 8 + 37
    raise _HeuristicFailed


def p_gcd(f: Poly, g: Poly) -> Poly:
    """GCD over Z, content included; result has a positive leading coefficient."""
    if not f:
        return _pos_lead(dict(g))
    if not g:
        return _pos_lead(dict(f))
    if f == g:
        return _pos_lead(dict(f))
    cf, cg = p_content(f), p_content(g)
    c = igcd(cf, cg)
    if len(f) == 1 or len(g) == 1:
        ef = p_min_exps(f)
        eg = p_min_exps(g)
        return {(min(ef[0], eg[0]), min(ef[1], eg[1]), min(ef[2], eg[2])): c}
    # strip integer and monomial content first
    ef, eg = p_min_exps(f), p_min_exps(g)
    e = (min(ef[0], eg[0]), min(ef[1], eg[1]), min(ef[2], eg[2]))
    f1 = p_shift(p_int_div(f, cf), (-ef[0], -ef[1], -ef[2]))
    g1 = p_shift(p_int_div(g, cg), (-eg[0], -eg[1], -eg[2]))
    v = _main_var(f1, g1)
    if v is None:
        return p_mono(c, e)
    vs = tuple(u for u in range(3) if _degree_in(f1, u) > 0 or _degree_in(g1, u) > 0)
    try:
        prim = _heu_gcd(f1, g1, vs)
    except _HeuristicFailed:
        prim = _prs_gcd(f1, g1, v)
    out = p_mul(p_mono(c, e), prim)
    return _pos_lead(out)


def _prs_gcd(f1: Poly, g1: Poly, v: int) -> Poly:
    """Primitive pseudo-remainder sequence in the main variable (fallback)."""
    F = _to_dense(f1, v)
    G = _to_dense(g1, v)
    if len(F) < len(G):
        F, G = G, F
    contF, F = _dense_primitive(F)
    contG, G = _dense_primitive(G)
    cont = p_gcd(contF, contG)
    while True:
        R = _dense_pseudo_rem(F, G)
        _dense_trim(R)
        if not R:
            break
        if len(R) == 1:
            G = [{_M1: 1}]
            break
        _, R = _dense_primitive(R)
        F, G = G, R
    return p_mul(cont, _from_dense(G, v))


def _pos_lead(f: Poly) -> Poly:
    if f and p_lead(f)[1] < 0:
        return p_neg(f)
    return f


# ---------------------------------------------------------------------------
# the field element
# ---------------------------------------------------------------------------

class Scalar:
    """An element of Q(q, q0, q1) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly, _raw: bool = False):
        if not _raw:
            num, den = _canonical(num, den)
        self.num = num
        self.den = den
        self._hash: int | None = None

    # -- constructors

    @staticmethod
    def from_int(k: int) -> "Scalar":
        return Scalar(p_int(k), p_int(1), _raw=True)

    @staticmethod
    def monomial(coeff: int = 1, q: int = 0, q0: int = 0, q1: int = 0) -> "Scalar":
        """c * q^a * q0^b * q1^c with Laurent (negative) exponents allowed."""
        if coeff == 0:
            return ZERO
        up = (max(q, 0), max(q0, 0), max(q1, 0))
        dn = (max(-q, 0), max(-q0, 0), max(-q1, 0))
        if coeff < 0 or any(dn):
            return Scalar(p_mono(coeff, up), p_mono(1, dn))
        return Scalar(p_mono(coeff, up), p_int(1), _raw=True)

    # -- ring/field operations

    def __add__(self, other: "Scalar") -> "Scalar":
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return Scalar(p_add(self.num, other.num), self.den)
        g = p_gcd(self.den, other.den)
        if g == {_M1: 1}:
            num = p_add(p_mul(self.num, other.den), p_mul(other.num, self.den))
            return Scalar(num, p_mul(self.den, other.den))
        d1 = p_divexact(self.den, g)
        d2 = p_divexact(other.den, g)
        num = p_add(p_mul(self.num, d2), p_mul(other.num, d1))
        return Scalar(num, p_mul(self.den, d2))

    def __neg__(self) -> "Scalar":
        return Scalar(p_neg(self.num), self.den, _raw=True)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __mul__(self, other: "Scalar") -> "Scalar":
        if not self.num or not other.num:
            return ZERO
        one = {_M1: 1}
        if self.den == one and other.den == one:
            return Scalar(p_mul(self.num, other.num), one)
        g1 = p_gcd(self.num, other.den)
        g2 = p_gcd(other.num, self.den)
        n1 = self.num if g1 == one else p_divexact(self.num, g1)
        d2 = other.den if g1 == one else p_divexact(other.den, g1)
        n2 = other.num if g2 == one else p_divexact(other.num, g2)
        d1 = self.den if g2 == one else p_divexact(self.den, g2)
        return Scalar(p_mul(n1, n2), p_mul(d1, d2))

    def inv(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("inverting the zero scalar")
        return Scalar(dict(self.den), dict(self.num))

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.inv()

    def __pow__(self, k: int) -> "Scalar":
        if k == 0:
            return ONE
        base = self if k > 0 else self.inv()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    # -- predicates, equality, hashing

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == self.den

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((tuple(sorted(self.num.items())), tuple(sorted(self.den.items()))))
            self._hash = h
        return h

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        return format_scalar(self)


def _canonical(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, {_M1: 1}
    if den == {_M1: 1}:
        return num, den
    g = p_gcd(num, den)
    if g != {_M1: 1}:
        num = p_divexact(num, g)
        den = p_divexact(den, g)
    if p_lead(den)[1] < 0:
        num, den = p_neg(num), p_neg(den)
    return num, den


ZERO = Scalar.from_int(0)
ONE = Scalar.from_int(1)
Q = Scalar.monomial(1, q=1)
Q0 = Scalar.monomial(1, q0=1)
Q1 = Scalar.monomial(1, q1=1)


def integer(k: int) -> Scalar:
    return Scalar.from_int(k)


def qpow(k: int) -> Scalar:
    return Scalar.monomial(1, q=k)


# functional aliases for the arithmetic kernel
def scalar_add(x: Scalar, y: Scalar) -> Scalar:
    return x + y


def scalar_mul(x: Scalar, y: Scalar) -> Scalar:
    return x * y


def scalar_inv(x: Scalar) -> Scalar:
    return x.inv()


# ---------------------------------------------------------------------------
# specialization homomorphisms
# ---------------------------------------------------------------------------

# named parameter substitutions: two-parameter type B, equal-parameter type B,
# and type D (both end parameters set to 1)
SPECIALIZATIONS: dict[str, dict[str, str]] = {
    "generic": {},
    "b2": {"q0": "q1"},
    "b1": {"q0": "q", "q1": "q"},
    "d1": {"q0": "1", "q1": "1"},
}

_TARGET_EXP: dict[str, Mono] = {
    "q": (1, 0, 0),
    "q0": (0, 1, 0),
    "q1": (0, 0, 1),
    "1": (0, 0, 0),
}


def _p_subst(f: Poly, asg: Mapping[str, str]) -> Poly:
    e0 = _TARGET_EXP[asg.get("q0", "q0")]
    e1 = _TARGET_EXP[asg.get("q1", "q1")]
    out: Poly = {}
    for (a, b, c), coeff in f.items():
        m = (a + b * e0[0] + c * e1[0], b * e0[1] + c * e1[1], b * e0[2] + c * e1[2])
        s = out.get(m, 0) + coeff
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def specialize(x: Scalar, assignment: Mapping[str, str]) -> Scalar:
    """Image of x under the ring map sending q0, q1 into {q, q0, q1, 1}.

    Raises SpecializationError if the denominator vanishes identically.
    """
    if not assignment:
        return x
    for k, v in assignment.items():
        if k not in ("q0", "q1") or v not in _TARGET_EXP:
            raise ValueError(f"bad substitution {k!r} -> {v!r}")
    den = _p_subst(x.den, assignment)
    if not den:
        raise SpecializationError(f"denominator of {x} vanishes under {dict(assignment)}")
    return Scalar(_p_subst(x.num, assignment), den)


@dataclass(frozen=True)
class Coeffs:
    """The three parameters as field values, possibly specialized.

    All arithmetic stays inside Q(q, q0, q1); a specialization simply sets
    the parameter slots to their images (e.g. q0 = q1 = q for "b1").
    """

    name: str
    q: Scalar
    q0: Scalar
    q1: Scalar
    assignment: Mapping[str, str] = field(default_factory=dict)

    @staticmethod
    def generic() -> "Coeffs":
        return Coeffs("generic", Q, Q0, Q1, {})

    @staticmethod
    def named(name: str) -> "Coeffs":
        try:
            asg = SPECIALIZATIONS[name]
        except KeyError:
            raise ValueError(f"unknown specialization {name!r}; pick from {sorted(SPECIALIZATIONS)}")
        return Coeffs(name, Q, specialize(Q0, asg), specialize(Q1, asg), asg)

    def map_scalar(self, x: Scalar) -> Scalar:
        return specialize(x, self.assignment)


# ---------------------------------------------------------------------------
# canonical text form and parsing
# ---------------------------------------------------------------------------

def _mono_str(m: Mono, c: int, first: bool) -> str:
    parts = []
    for name, e in zip(VARS, m):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    mag = abs(c)
    if mag != 1 or not parts:
        parts.insert(0, str(mag))
    body = "*".join(parts)
    if first:
        return body if c > 0 else f"-{body}"
    return f" + {body}" if c > 0 else f" - {body}"


def format_poly(f: Poly) -> str:
    if not f:
        return "0"
    out = []
    for i, m in enumerate(sorted(f, reverse=True)):
        out.append(_mono_str(m, f[m], i == 0))
    return "".join(out)


def _den_needs_parens(f: Poly) -> bool:
    if len(f) != 1:
        return True
    (m, c), = f.items()
    return c != 1 or sum(1 for e in m if e) != 1


def format_scalar(x: Scalar) -> str:
    if not x.num:
        return "0"
    num = format_poly(x.num)
    if x.den == {_M1: 1}:
        return num
    if len(x.num) > 1:
        num = f"({num})"
    den = format_poly(x.den)
    if _den_needs_parens(x.den):
        den = f"({den})"
    return f"{num}/{den}"


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j], i))
            i = j
            continue
        if ch == "q":
            if text[i:i + 2] in ("q0", "q1"):
                toks.append(("var", text[i:i + 2], i))
                i += 2
            else:
                toks.append(("var", "q", i))
                i += 1
            continue
        if ch in "+-*/^()":
            toks.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(("end", "", n))
    return toks


class _ScalarParser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind: str | None = None):
        tok = self.toks[self.k]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        self.k += 1
        return tok

    def parse(self) -> Scalar:
        x = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return x

    def expr(self) -> Scalar:
        x = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self) -> Scalar:
        x = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            y = self.factor()
            x = x * y if op == "*" else x / y
        return x

    def factor(self) -> Scalar:
        neg = False
        while self.peek()[0] in ("+", "-"):
            if self.take()[0] == "-":
                neg = not neg
        x = self.atom()
        if self.peek()[0] == "^":
            self.take()
            x = x ** self.exponent()
        return -x if neg else x

    def exponent(self) -> int:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            if self.take()[0] == "-":
                sign = -1
        return sign * int(self.take("int")[1])

    def atom(self) -> Scalar:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return integer(int(val))
        if kind == "var":
            self.take()
            return {"q": Q, "q0": Q0, "q1": Q1}[val]
        if kind == "(":
            self.take()
            x = self.expr()
            self.take(")")
            return x
        raise ParseError(f"expected a value, found {val!r}", pos)


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical scalar grammar (round-trips with format_scalar)."""
    return _ScalarParser(text).parse()
