"""Expression grammars for the `eval` command.

* hecke:  scalars, `T[s0.s1]`, `X[2]`, with + - * / ^ and parentheses,
  e.g. ``T[s0]*X[1]^-1*T[s0]``.
* tensor: a dot chain of coideal generators applied to a basis vector,
  e.g. ``e_r . v[r+1]`` or ``f0 . M[1,2]``.  Bracket indices may use the
  symbols r, d, n.
* schur:  sums of scalar multiples of products of `psi[...]`, `idem[...]`,
  `phi[word; row; col]` and `id`, `*` meaning composition.
"""

from __future__ import annotations

import re

from .hecke import HeckeAlgebra, HeckeElt
from .scalars import ONE, ParseError, Q, Q0, Q1, Scalar, integer
from .schur import Composition, SchurContext, SchurElt
from .tensor import TensorModule, TensorVec


def _index_value(text: str, env: dict[str, int]) -> int:
    """Evaluate a bracket index: integers, r/d/n symbols, + - * and parens."""
    text = text.strip()
    if not re.fullmatch(r"[0-9rdn+\-* ()]+", text):
        raise ParseError(f"bad index expression {text!r}", 0)
    return int(eval(text, {"__builtins__": {}}, env))  # noqa: S307 - vetted charset


# -- hecke ------------------------------------------------------------------

_HECKE_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<var>q0|q1|q)|(?P<T>T\[(?P<Tw>[^\]]*)\])"
    r"|(?P<X>X\[(?P<Xa>[^\]]*)\])|(?P<op>[-+*/^()]))")


def _hecke_tokens(text: str, env: dict[str, int]):
    pos = 0
    out = []
    while pos < len(text):
        m = _HECKE_TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ParseError(f"unexpected input {text[pos:]!r}", pos)
            break
        if m.group("int"):
            out.append(("scalar", integer(int(m.group("int"))), pos))
        elif m.group("var"):
            out.append(("scalar", {"q": Q, "q0": Q0, "q1": Q1}[m.group("var")], pos))
        elif m.group("T"):
            out.append(("T", m.group("Tw"), pos))
        elif m.group("X"):
            out.append(("X", _index_value(m.group("Xa"), env), pos))
        else:
            out.append((m.group("op"), None, pos))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _HeckeParser:
    """Values are (scalar | HeckeElt); scalars promote on demand."""

    def __init__(self, text: str, alg: HeckeAlgebra):
        self.alg = alg
        env = {"d": alg.W.d, "n": alg.W.n, "r": alg.W.n // 2 - 1}
        self.toks = _hecke_tokens(text, env)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def parse(self) -> HeckeElt:
        val = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return self.promote(val)

    def promote(self, val) -> HeckeElt:
        return self.alg.one().scale(val) if isinstance(val, Scalar) else val

    def expr(self):
        val = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            a, b = val, rhs
            if isinstance(a, Scalar) and isinstance(b, Scalar):
                val = a + b if op == "+" else a - b
            else:
                a, b = self.promote(a), self.promote(b)
                val = a + b if op == "+" else a - b
        return val

    def term(self):
        val = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            rhs = self.factor()
            if op == "/":
                if not isinstance(rhs, Scalar):
                    raise ParseError("division by a non-scalar", self.peek()[2])
                rhs = rhs.inv()
                op = "*"
            a, b = val, rhs
            if isinstance(a, Scalar) and isinstance(b, Scalar):
                val = a * b
            elif isinstance(a, Scalar):
                val = b.scale(a)
            elif isinstance(b, Scalar):
                val = a.scale(b)
            else:
                val = self.alg.mul(a, b)
        return val

    def factor(self):
        neg = False
        while self.peek()[0] in ("+", "-"):
            if self.take()[0] == "-":
                neg = not neg
        val = self.atom()
        if self.peek()[0] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "-":
                self.take()
                sign = -1
            kind, v, pos = self.take()
            if kind != "scalar":
                raise ParseError("expected an integer exponent", pos)
            k = _scalar_int(v, pos) * sign
            val = self.power(val, k, pos)
        if neg:
            val = -val if isinstance(val, Scalar) else val.scale(integer(-1))
        return val

    def power(self, val, k: int, pos: int):
        if isinstance(val, Scalar):
            return val ** k
        if k == 0:
            return self.alg.one()
        if k > 0:
            out = val
            for _ in range(k - 1):
                out = self.alg.mul(out, val)
            return out
        # negative powers: only single generators and X elements invert cleanly
        terms = val.terms
        if len(terms) == 1:
            (w, c), = terms.items()
            word = self.alg.W.reduced_word(w)
            inv = self.alg.one()
            for i in reversed(word):
                inv = self.alg.mul(inv, self.alg.gen_inverse(i))
            inv = inv.scale(c.inv())
            out = inv
            for _ in range(-k - 1):
                out = self.alg.mul(out, inv)
            return out
        raise ParseError("cannot invert a general element", pos)

    def atom(self):
        kind, v, pos = self.peek()
        if kind == "scalar":
            self.take()
            return v
        if kind == "T":
            self.take()
            return self.alg.T(self.alg.W.parse_elt(v) if v.strip() else self.alg.W.identity)
        if kind == "X":
            self.take()
            return self.alg.X(v)
        if kind == "(":
            self.take()
            val = self.expr()
            k2, _, pos2 = self.take()
            if k2 != ")":
                raise ParseError("expected ')'", pos2)
            return val
        raise ParseError("expected a value", pos)


def _scalar_int(s: Scalar, pos: int) -> int:
    if s.den != {(0, 0, 0): 1} or any(m != (0, 0, 0) for m in s.num):
        raise ParseError("expected an integer", pos)
    return s.num.get((0, 0, 0), 0)


def eval_hecke(text: str, alg: HeckeAlgebra) -> HeckeElt:
    return _HeckeParser(text, alg).parse()


# -- tensor -----------------------------------------------------------------

_GEN_NAME = re.compile(r"^(e|f|h|k|t)_?([0-9rdn+\-* ]+|r)$")
_BASIS = re.compile(r"^(v|M)\[([^\]]*)\]$")


def eval_tensor(text: str, mod: TensorModule) -> TensorVec:
    env = {"r": mod.r, "d": mod.d, "n": mod.n}
    parts = [p.strip() for p in _split_top_dots(text)]
    if not parts:
        raise ParseError("empty expression", 0)
    m = _BASIS.match(parts[-1])
    if m is None:
        raise ParseError(f"expected a basis vector, found {parts[-1]!r}", 0)
    indices = [_index_value(p, env) for p in m.group(2).split(",")]
    if m.group(1) == "v" and len(indices) != 1:
        raise ParseError("v[...] takes a single index", 0)
    if len(indices) != mod.d:
        raise ParseError(f"index length {len(indices)} != d = {mod.d}", 0)
    vec = mod.basis(indices)
    for name in reversed(parts[:-1]):
        gm = _GEN_NAME.match(name)
        if gm is None:
            raise ParseError(f"bad generator name {name!r}", 0)
        kind, idx = gm.group(1), gm.group(2)
        if kind == "t":
            op = mod.coideal_op("tr" if idx == "r" else f"t{_index_value(idx, env)}")
        else:
            op = mod.coideal_op(f"{kind}{_index_value(idx, env)}")
        vec = op(vec)
    return vec


def _split_top_dots(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "." and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


# -- schur ------------------------------------------------------------------

def eval_schur(text: str, ctx: SchurContext) -> SchurElt:
    env = {"r": ctx.r, "d": ctx.d, "n": ctx.n}

    def parse_atom(tok: str) -> SchurElt:
        tok = tok.strip()
        if tok == "id":
            return ctx.identity_schur()
        m = re.fullmatch(r"psi\[([^\]]*)\]", tok)
        if m:
            name = m.group(1).strip().replace("_", "")
            return ctx.psi(name)
        m = re.fullmatch(r"idem\[([^\]]*)\]", tok)
        if m:
            lam = Composition(_index_value(p, env) for p in m.group(1).split(","))
            return ctx.idempotent(lam)
        m = re.fullmatch(r"phi\[([^;]*);([^;]*);([^\]]*)\]", tok)
        if m:
            word = m.group(1).strip()
            g = ctx.W.parse_elt(word) if word not in ("", "e") else ctx.W.identity
            lam = Composition(_index_value(p, env) for p in m.group(2).split(","))
            mu = Composition(_index_value(p, env) for p in m.group(3).split(","))
            return ctx.phi(lam, mu, g)
        raise ParseError(f"bad atom {tok!r}", 0)

    out: SchurElt | None = None
    for piece, sign in _split_signed(text):
        factors = _split_top_stars(piece)
        coeff = ONE
        prod: SchurElt | None = None
        for fac in factors:
            fac = fac.strip()
            if re.match(r"^(psi|idem|phi)\[|^id$", fac):
                a = parse_atom(fac)
                prod = a if prod is None else prod @ a
            else:
                from .scalars import parse_scalar
                coeff = coeff * parse_scalar(fac)
        if prod is None:
            raise ParseError(f"no operator atom in {piece!r}", 0)
        term = prod.scale(coeff if sign > 0 else coeff * integer(-1))
        out = term if out is None else out + term
    assert out is not None
    return out


def _split_signed(text: str) -> list[tuple[str, int]]:
    out, depth, cur, sign = [], 0, [], 1
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in "+-" and cur and cur[-1] not in "*^(":
            out.append(("".join(cur), sign))
            sign = 1 if ch == "+" else -1
            cur = []
        else:
            cur.append(ch)
    out.append(("".join(cur), sign))
    return [(p.strip(), s) for p, s in out if p.strip()]


def _split_top_stars(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "*" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out
