"""Named verification suites over configurable (r, d, variant, specialization).

Each suite is a list of independent checks; a check returns None on success
or a serializable counterexample.  The runner times every check and builds a
deterministic report (timing fields aside).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .hecke import HeckeAlgebra, HeckeElt
from .scalars import Coeffs, ONE, Q, Q0, Q1, Scalar, format_scalar
from .schur import SchurContext, SchurElt, generate_certificates
from .tensor import LinOp, TensorModule
from .weyl import WeylGroup

SUITE_NAMES = (
    "hecke-relations", "braid-td", "module-relations", "commute",
    "coideal-serre", "schur-xlm", "schur-psi", "schur-generate",
    "variants", "specialize-consistency",
)

REPORT_SCHEMA_VERSION = 1


class SuiteConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    r: int = 3
    d: int = 2
    variant: str = "jj"
    spec: str = "generic"
    window: int = 2
    maxlen: int = 6
    genlen: int = 3  # word-length bound for the generation certificates

    def validate(self) -> None:
        if self.suite not in SUITE_NAMES:
            raise SuiteConfigError(f"unknown suite {self.suite!r}; pick from {SUITE_NAMES}")
        if self.d < 1:
            raise SuiteConfigError("need d >= 1")
        if self.r < self.d:
            raise SuiteConfigError(f"need r >= d (got r={self.r} < d={self.d})")
        if self.variant not in ("jj", "ji", "ij", "ii"):
            raise SuiteConfigError(f"unknown variant {self.variant!r}")
        if self.variant == "ii" and (self.r < 2 or self.d < 2):
            raise SuiteConfigError("variant ii needs r >= 2 and d >= 2")
        if self.spec not in ("generic", "b2", "b1", "d1"):
            raise SuiteConfigError(f"unknown specialization {self.spec!r}")
        if self.window < 1:
            raise SuiteConfigError("need window >= 1")

    def coeffs(self) -> Coeffs:
        return Coeffs.named(self.spec)


@dataclass
class Check:
    check_id: str
    identity: str
    fn: Callable[[], dict | None]


@dataclass
class CheckResult:
    check_id: str
    identity: str
    status: str  # pass | fail | error
    seconds: float
    counterexample: dict | None = None


@dataclass
class SuiteReport:
    suite: str
    config: dict
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    @property
    def total_seconds(self) -> float:
        return sum(c.seconds for c in self.checks)


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    cfg.validate()
    checks = BUILDERS[cfg.suite](cfg)
    report = SuiteReport(cfg.suite, {
        "suite": cfg.suite, "r": cfg.r, "d": cfg.d, "variant": cfg.variant,
        "spec": cfg.spec, "window": cfg.window, "maxlen": cfg.maxlen,
        "genlen": cfg.genlen,
    })
    for check in checks:
        t0 = time.perf_counter()
        try:
            cex = check.fn()
            status = "pass" if cex is None else "fail"
        except Exception as exc:  # surfaced as a failing check, never swallowed
            cex = {"error": f"{type(exc).__name__}: {exc}"}
            status = "error"
        dt = time.perf_counter() - t0
        report.checks.append(CheckResult(check.check_id, check.identity, status, dt, cex))
    return report


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _elt_eq(lhs: HeckeElt, rhs: HeckeElt) -> dict | None:
    if lhs == rhs:
        return None
    return {"lhs": str(lhs), "rhs": str(rhs)}


def _op_eq(mod: TensorModule, window: list, lhs, rhs) -> dict | None:
    for f in window:
        v = mod.basis(f)
        a, b = lhs(v), rhs(v)
        if not (a - b).is_zero():
            return {"index": list(f), "lhs": str(a), "rhs": str(b)}
    return None


def _braid_words(i: int, j: int, d: int) -> tuple[list[int], list[int]] | None:
    """Alternating braid words for the affine C_d diagram; None if i == j."""
    if i == j:
        return None
    i, j = min(i, j), max(i, j)
    if j - i > 1:
        m = 2
    elif (i, j) == (0, 1) or (i, j) == (d - 1, d):
        m = 4
    else:
        m = 3
    w1 = [(i if k % 2 == 0 else j) for k in range(m)]
    w2 = [(j if k % 2 == 0 else i) for k in range(m)]
    return w1, w2


def _schur_eq(lhs: SchurElt, rhs: SchurElt) -> dict | None:
    if lhs == rhs:
        return None
    diff = lhs - rhs
    lam = next(iter(diff.images))
    return {"at": list(lam), "lhs": str(lhs.image(lam)), "rhs": str(rhs.image(lam))}


# ---------------------------------------------------------------------------
# hecke-relations
# ---------------------------------------------------------------------------

def _build_hecke_relations(cfg: SuiteConfig) -> list[Check]:
    n = 2 * cfg.r + 2
    W = WeylGroup(cfg.d, n)
    H = HeckeAlgebra(W, cfg.coeffs())
    d = cfg.d
    checks: list[Check] = []

    def quad(i: int):
        def fn():
            a, b = H.roots[i]
            t = H.T([i])
            lhs = H.mul(t - H.one().scale(a), t - H.one().scale(b))
            return None if lhs.is_zero() else {"lhs": str(lhs)}
        return fn

    for i in range(d):
        checks.append(Check(f"quad-T{i}", f"(T{i} - a_{i})(T{i} - b_{i}) = 0", quad(i)))
    for i in range(d):
        for j in range(i + 1, d):
            w = _braid_words(i, j, d)
            assert w is not None
            w1, w2 = w

            def fn(w1=w1, w2=w2):
                return _elt_eq(H.T(w1), H.T(w2))
            label = "commute" if j - i > 1 else f"braid m={len(w1)}"
            checks.append(Check(f"braid-{i}-{j}", f"T-word {w1} = {w2} ({label})", fn))
    for a in range(1, d + 1):
        def fn(a=a):
            return _elt_eq(H.mul(H.X(a), H.X_inv(a)), H.one())
        checks.append(Check(f"toric-inv-X{a}", f"X{a} X{a}^-1 = 1", fn))
    for a in range(1, d + 1):
        for b in range(a + 1, d + 1):
            def fn(a=a, b=b):
                return _elt_eq(H.mul(H.X(a), H.X(b)), H.mul(H.X(b), H.X(a)))
            checks.append(Check(f"toric-comm-X{a}-X{b}", f"X{a} X{b} = X{b} X{a}", fn))

    def bl_t0x1():
        lhs = H.mul(H.mul(H.T([0]), H.X_inv(1)), H.T([0]))
        c = H.coeffs.q0.inv() * H.coeffs.q1
        rhs = H.X(1).scale(c) + H.T([0]).scale(c - ONE)
        return _elt_eq(lhs, rhs)
    checks.append(Check("bl-T0X1", "T0 X1^-1 T0 = q0^-1 q1 X1 + (q0^-1 q1 - 1) T0", bl_t0x1))

    for i in range(1, d):
        def fn(i=i):
            lhs = H.mul(H.mul(H.T([i]), H.X(i)), H.T([i]))
            return _elt_eq(lhs, H.X(i + 1))
        checks.append(Check(f"bl-T{i}X{i}", f"T{i} X{i} T{i} = X{i + 1}", fn))
    for i in range(d):
        for a in range(1, d + 1):
            if a in (i, i + 1):
                continue

            def fn(i=i, a=a):
                return _elt_eq(H.mul(H.T([i]), H.X(a)), H.mul(H.X(a), H.T([i])))
            checks.append(Check(f"comm-T{i}-X{a}", f"T{i} X{a} = X{a} T{i}", fn))

    def word_independence():
        bound = min(cfg.maxlen, 6)
        for w in W.ball(bound):
            words = _all_reduced_words(W, w)
            base = H.T(words[0])
            qbase = H.q_w(w)
            for word in words[1:]:
                if H.T(word) != base:
                    return {"element": W.elt_str(w), "word": list(word)}
                qw = ONE
                for i in word:
                    qw = qw * H.weights[i]
                if qw != qbase:
                    return {"element": W.elt_str(w), "word": list(word), "q_w": str(qw)}
        return None
    checks.append(Check("word-independence",
                        f"T_w and q_w agree on every reduced word (l <= {min(cfg.maxlen, 6)})",
                        word_independence))
    return checks


def _all_reduced_words(W: WeylGroup, w) -> list[tuple[int, ...]]:
    if W.length(w) == 0:
        return [()]
    out = []
    for i in W.descents_right(w):
        for word in _all_reduced_words(W, W.multiply(w, W.gens[i])):
            out.append(word + (i,))
    return out


# ---------------------------------------------------------------------------
# braid-td
# ---------------------------------------------------------------------------

def _build_braid_td(cfg: SuiteConfig) -> list[Check]:
    n = 2 * cfg.r + 2
    W = WeylGroup(cfg.d, n)
    H = HeckeAlgebra(W, cfg.coeffs())
    d = cfg.d
    checks = []

    def td_from_x():
        return _elt_eq(H.build_Td(), H.T([d]))
    checks.append(Check("td-from-X",
                        "q0^-1 X_d T_{d-1}^-1 ... T_0^-1 ... T_{d-1}^-1 = T_d", td_from_x))

    def td_quad():
        t = H.T([d])
        a, b = H.coeffs.q1.inv(), -H.coeffs.q0.inv()
        lhs = H.mul(t - H.one().scale(a), t - H.one().scale(b))
        return None if lhs.is_zero() else {"lhs": str(lhs)}
    checks.append(Check("td-quadratic", "(T_d - q1^-1)(T_d + q0^-1) = 0", td_quad))

    for i in range(d - 1):
        def fn(i=i):
            return _elt_eq(H.T([d, i]), H.T([i, d]))
        checks.append(Check(f"td-comm-T{i}", f"T_d T{i} = T{i} T_d", fn))
    if d >= 2:
        def fn():
            return _elt_eq(H.T([d - 1, d, d - 1, d]), H.T([d, d - 1, d, d - 1]))
        checks.append(Check("td-braid", "(T_{d-1} T_d)^2 = (T_d T_{d-1})^2", fn))
    return checks


# ---------------------------------------------------------------------------
# module-relations
# ---------------------------------------------------------------------------

def _build_module_relations(cfg: SuiteConfig) -> list[Check]:
    mod = TensorModule(cfg.r, cfg.d, cfg.coeffs(), cfg.variant)
    window = mod.window_indices(cfg.window)
    d = cfg.d
    c = mod.coeffs
    checks: list[Check] = []

    gen = {i: (lambda v, i=i: mod.act_gen(v, i)) for i in range(d + 1)}
    roots = [(c.q0.inv(), -c.q1)] + [(c.q.inv(), -c.q)] * (d - 1) + [(c.q1.inv(), -c.q0.inv())]

    for i in range(d + 1):
        a, b = roots[i]

        def fn(i=i, a=a, b=b):
            return _op_eq(mod, window,
                          lambda v: gen[i](gen[i](v)),
                          lambda v: gen[i](v).scale(a + b) - v.scale(a * b))
        checks.append(Check(f"mquad-T{i}", f"(T{i} - a)(T{i} - b) = 0 on the window", fn))

    for i in range(d + 1):
        for j in range(i + 1, d + 1):
            w = _braid_words(i, j, d)
            assert w is not None
            w1, w2 = w

            def fn(w1=w1, w2=w2):
                return _op_eq(mod, window,
                              lambda v: mod.act_word(v, w1),
                              lambda v: mod.act_word(v, w2))
            checks.append(Check(f"mbraid-{i}-{j}", f"word {w1} = word {w2} on the window", fn))

    for a in range(1, d + 1):
        def fn(a=a):
            return _op_eq(mod, window,
                          lambda v: mod.act_X(mod.act_X(v, a), a, -1), lambda v: v)
        checks.append(Check(f"mtoric-inv-X{a}", f"X{a} X{a}^-1 = id on the window", fn))
    for a in range(1, d + 1):
        for b in range(a + 1, d + 1):
            def fn(a=a, b=b):
                return _op_eq(mod, window,
                              lambda v: mod.act_X(mod.act_X(v, a), b),
                              lambda v: mod.act_X(mod.act_X(v, b), a))
            checks.append(Check(f"mtoric-comm-X{a}-X{b}", f"X{a} X{b} = X{b} X{a}", fn))

    def bl():
        cc = c.q0.inv() * c.q1
        return _op_eq(mod, window,
                      lambda v: mod.act_T0(mod.act_X(mod.act_T0(v), 1, -1)),
                      lambda v: mod.act_X(v, 1).scale(cc) + mod.act_T0(v).scale(cc - ONE))
    checks.append(Check("mbl-T0X1", "T0 X1^-1 T0 = q0^-1 q1 X1 + (q0^-1 q1 - 1) T0", bl))

    for i in range(1, d):
        def fn(i=i):
            return _op_eq(mod, window,
                          lambda v: mod.act_Ti(mod.act_X(mod.act_Ti(v, i), i), i),
                          lambda v: mod.act_X(v, i + 1))
        checks.append(Check(f"mbl-T{i}X{i}", f"T{i} X{i} T{i} = X{i + 1}", fn))

    for i in range(d):
        for a in range(1, d + 1):
            if a in (i, i + 1):
                continue

            def fn(i=i, a=a):
                return _op_eq(mod, window,
                              lambda v: mod.act_X(gen[i](v), a),
                              lambda v: gen[i](mod.act_X(v, a)))
            checks.append(Check(f"mcomm-T{i}-X{a}", f"T{i} X{a} = X{a} T{i}", fn))

    if cfg.variant != "jj":
        def closure():
            for f in window:
                v = mod.basis(f)
                for i in range(d + 1):
                    for g in gen[i](v).terms:
                        if not mod.allowed(g):
                            return {"index": list(f), "generator": f"T{i}", "escapes": list(g)}
            return None
        checks.append(Check("mstable", "the variant subspace is stable under the Hecke action", closure))
    return checks


# ---------------------------------------------------------------------------
# commute
# ---------------------------------------------------------------------------

def _build_commute(cfg: SuiteConfig) -> list[Check]:
    mod = TensorModule(cfg.r, cfg.d, cfg.coeffs(), cfg.variant)
    window = mod.window_indices(cfg.window)
    d = cfg.d
    checks = []
    hecke_names = [f"T{i}" for i in range(d + 1)] + [f"X{a}" for a in range(1, d + 1)]
    for gname in mod.coideal_generator_names():
        cop = mod.coideal_op(gname)
        for hname in hecke_names:
            hop = mod.hecke_op(hname)

            def fn(cop=cop, hop=hop):
                return _op_eq(mod, window,
                              lambda v: hop(cop(v)), lambda v: cop(hop(v)))
            checks.append(Check(f"comm-{gname}-{hname}",
                                f"left action of {gname} commutes with right action of {hname}", fn))
    return checks


# ---------------------------------------------------------------------------
# coideal-serre
# ---------------------------------------------------------------------------

def _coideal_relations(mod: TensorModule) -> list[tuple[str, str, LinOp, LinOp]]:
    """(check id, identity, lhs, rhs) for the defining relations that hold in
    the tensor representation of the given variant."""
    c = mod.coeffs
    q, q0, q1 = c.q, c.q0, c.q1
    qpq = q + q.inv()
    qmq = (q - q.inv()).inv()
    r = mod.r
    v = mod.variant
    rel: list[tuple[str, str, LinOp, LinOp]] = []
    I = mod.identity_op()

    lo, hi = {"jj": (0, r), "ji": (0, r - 1), "ij": (1, r), "ii": (1, r - 1)}[v]
    e = {i: mod.coideal_op(f"e{i}") for i in range(lo, hi + 1)}
    f = {i: mod.coideal_op(f"f{i}") for i in range(lo, hi + 1)}
    if v == "jj":
        diag = {a: mod.coideal_op(f"h{a}") for a in range(r + 2)}
        diag_inv = {a: mod.coideal_op(f"h{a}inv") for a in range(r + 2)}
        dname = "h"
    else:
        diag = {i: mod.coideal_op(f"k{i}") for i in range(lo, hi + 1)}
        diag_inv = {i: mod.coideal_op(f"k{i}inv") for i in range(lo, hi + 1)}
        dname = "k"
    k = {i: mod.coideal_op(f"k{i}") for i in range(lo, hi + 1)}
    ki = {i: mod.coideal_op(f"k{i}inv") for i in range(lo, hi + 1)}

    for a in diag:
        rel.append((f"cartan-inv-{dname}{a}", f"{dname}_{a} {dname}_{a}^-1 = 1",
                    diag[a] @ diag_inv[a], I))
    das = sorted(diag)
    for ai in range(len(das)):
        for bi in range(ai + 1, len(das)):
            a, b = das[ai], das[bi]
            rel.append((f"cartan-comm-{dname}{a}-{dname}{b}",
                        f"{dname}_{a} {dname}_{b} = {dname}_{b} {dname}_{a}",
                        diag[a] @ diag[b], diag[b] @ diag[a]))

    def conj_exponent(a: int, j: int, kind: str) -> int:
        # exponent in  diag_a  gen_j  diag_a^-1 = q^exp gen_j
        if v == "jj":
            if a == 0:
                exp = 2 if j == 0 else 0
            elif a == r + 1:
                exp = -2 if j == r else 0
            else:
                exp = (1 if a == j else 0) - (1 if a - 1 == j else 0)
        else:
            cij = 2 * (a == j) - (abs(a - j) == 1)
            extra = 0
            if v in ("ji",) and a == 0 and j == 0:
                extra = 1
            if v in ("ij",) and a == r and j == r:
                extra = 1
            exp = cij + extra
        return exp if kind == "e" else -exp

    for a in diag:
        for j in e:
            exp = conj_exponent(a, j, "e")
            rel.append((f"cartan-conj-{dname}{a}-e{j}",
                        f"{dname}_{a} e_{j} {dname}_{a}^-1 = q^{exp} e_{j}",
                        diag[a] @ e[j], e[j].scale(Scalar.monomial(1, q=exp)) @ diag[a]))
            exp = conj_exponent(a, j, "f")
            rel.append((f"cartan-conj-{dname}{a}-f{j}",
                        f"{dname}_{a} f_{j} {dname}_{a}^-1 = q^{exp} f_{j}",
                        diag[a] @ f[j], f[j].scale(Scalar.monomial(1, q=exp)) @ diag[a]))

    deformed_pairs = {"jj": {(0, 0), (r, r)}, "ji": {(0, 0)}, "ij": {(r, r)}, "ii": set()}[v]
    for i in e:
        for j in e:
            if (i, j) in deformed_pairs:
                continue
            lhs = e[i] @ f[j] - f[j] @ e[i]
            rhs = (k[i] - ki[i]).scale(qmq) if i == j else (I - I)
            rel.append((f"ef-comm-{i}-{j}",
                        f"e_{i} f_{j} - f_{j} e_{i} = delta_ij (k_{i} - k_{i}^-1)/(q - q^-1)",
                        lhs, rhs))

    idx = sorted(e)
    for i in idx:
        for j in idx:
            if i == j:
                continue
            if abs(i - j) == 1:
                rel.append((f"serre-e-{i}-{j}",
                            f"e_{i}^2 e_{j} + e_{j} e_{i}^2 = (q + q^-1) e_{i} e_{j} e_{i}",
                            (e[i] ** 2) @ e[j] + e[j] @ (e[i] ** 2),
                            (e[i] @ e[j] @ e[i]).scale(qpq)))
                rel.append((f"serre-f-{i}-{j}",
                            f"f_{i}^2 f_{j} + f_{j} f_{i}^2 = (q + q^-1) f_{i} f_{j} f_{i}",
                            (f[i] ** 2) @ f[j] + f[j] @ (f[i] ** 2),
                            (f[i] @ f[j] @ f[i]).scale(qpq)))
            elif i < j:
                rel.append((f"comm-e-{i}-{j}", f"e_{i} e_{j} = e_{j} e_{i}",
                            e[i] @ e[j], e[j] @ e[i]))
                rel.append((f"comm-f-{i}-{j}", f"f_{i} f_{j} = f_{j} f_{i}",
                            f[i] @ f[j], f[j] @ f[i]))

    # deformed Serre relations at the diagram ends
    if v in ("jj", "ij"):
        cr1 = Scalar.monomial(1, q=2) * q0 * q1.inv()
        cr2 = Scalar.monomial(1, q=-2)
        rel.append((f"dserre-e{r}",
                    "e_r^2 f_r + f_r e_r^2 = (q+q^-1)(e_r f_r e_r - q^2 q0 q1^-1 e_r k_r - q^-2 e_r k_r^-1)",
                    (e[r] ** 2) @ f[r] + f[r] @ (e[r] ** 2),
                    (e[r] @ f[r] @ e[r] - (e[r] @ k[r]).scale(cr1) - (e[r] @ ki[r]).scale(cr2)).scale(qpq)))
        rel.append((f"dserre-f{r}",
                    "f_r^2 e_r + e_r f_r^2 = (q+q^-1)(f_r e_r f_r - q^2 q0 q1^-1 k_r f_r - q^-2 k_r^-1 f_r)",
                    (f[r] ** 2) @ e[r] + e[r] @ (f[r] ** 2),
                    (f[r] @ e[r] @ f[r] - (k[r] @ f[r]).scale(cr1) - (ki[r] @ f[r]).scale(cr2)).scale(qpq)))
    if v in ("jj", "ji"):
        c01 = q1 * q
        c02 = q0.inv() * q.inv()
        rel.append(("dserre-e0",
                    "e_0^2 f_0 + f_0 e_0^2 = (q+q^-1)(e_0 f_0 e_0 - q1 q e_0 k_0 - q0^-1 q^-1 e_0 k_0^-1)",
                    (e[0] ** 2) @ f[0] + f[0] @ (e[0] ** 2),
                    (e[0] @ f[0] @ e[0] - (e[0] @ k[0]).scale(c01) - (e[0] @ ki[0]).scale(c02)).scale(qpq)))
        rel.append(("dserre-f0",
                    "f_0^2 e_0 + e_0 f_0^2 = (q+q^-1)(f_0 e_0 f_0 - q1 q k_0 f_0 - q0^-1 q^-1 k_0^-1 f_0)",
                    (f[0] ** 2) @ e[0] + e[0] @ (f[0] ** 2),
                    (f[0] @ e[0] @ f[0] - (k[0] @ f[0]).scale(c01) - (ki[0] @ f[0]).scale(c02)).scale(qpq)))

    # t-generator relations
    ts: list[tuple[str, LinOp, int, Scalar]] = []
    if v in ("ji", "ii"):
        ts.append(("tr", mod.coideal_op("tr"), r, q0 * q1.inv()))
    if v in ("ij", "ii"):
        ts.append(("t0", mod.coideal_op("t0"), 0, q0.inv() * q1))
    for tname, t, node, tcoef in ts:
        nb = node - 1 if node == r else node + 1  # the adjacent e/f index
        for i in e:
            if i == nb:
                rel.append((f"serre-{tname}-e{i}",
                            f"{tname}^2 e_{i} + e_{i} {tname}^2 = (q+q^-1) {tname} e_{i} {tname} + {format_scalar(tcoef)} e_{i}",
                            (t ** 2) @ e[i] + e[i] @ (t ** 2),
                            (t @ e[i] @ t).scale(qpq) + e[i].scale(tcoef)))
                rel.append((f"serre-{tname}-f{i}",
                            f"{tname}^2 f_{i} + f_{i} {tname}^2 = (q+q^-1) {tname} f_{i} {tname} + {format_scalar(tcoef)} f_{i}",
                            (t ** 2) @ f[i] + f[i] @ (t ** 2),
                            (t @ f[i] @ t).scale(qpq) + f[i].scale(tcoef)))
                rel.append((f"serre-e{i}-{tname}",
                            f"e_{i}^2 {tname} + {tname} e_{i}^2 = (q+q^-1) e_{i} {tname} e_{i}",
                            (e[i] ** 2) @ t + t @ (e[i] ** 2), (e[i] @ t @ e[i]).scale(qpq)))
                rel.append((f"serre-f{i}-{tname}",
                            f"f_{i}^2 {tname} + {tname} f_{i}^2 = (q+q^-1) f_{i} {tname} f_{i}",
                            (f[i] ** 2) @ t + t @ (f[i] ** 2), (f[i] @ t @ f[i]).scale(qpq)))
            else:
                rel.append((f"comm-{tname}-e{i}", f"{tname} e_{i} = e_{i} {tname}",
                            t @ e[i], e[i] @ t))
                rel.append((f"comm-{tname}-f{i}", f"{tname} f_{i} = f_{i} {tname}",
                            t @ f[i], f[i] @ t))
        for i in k:
            rel.append((f"comm-{tname}-k{i}", f"{tname} k_{i} = k_{i} {tname}",
                        t @ k[i], k[i] @ t))
    if v == "ii":
        rel.append(("comm-t0-tr", "t_0 t_r = t_r t_0",
                    ts[0][1] @ ts[1][1], ts[1][1] @ ts[0][1]))
    return rel


def _build_coideal_serre(cfg: SuiteConfig) -> list[Check]:
    mod = TensorModule(cfg.r, cfg.d, cfg.coeffs(), cfg.variant)
    window = mod.window_indices(cfg.window)
    checks = []
    for cid, identity, lhs, rhs in _coideal_relations(mod):
        def fn(lhs=lhs, rhs=rhs):
            return _op_eq(mod, window, lhs, rhs)
        checks.append(Check(cid, identity, fn))

    if cfg.d == 1 and cfg.variant == "jj":
        def closed_form():
            return _single_factor_table_check(mod, cfg.window)
        checks.append(Check("d1-closed-form",
                            "the embedded action equals the single-factor closed form", closed_form))
    return checks


def _single_factor_table_check(mod: TensorModule, window_mult: int) -> dict | None:
    """Compare the lifted coideal action at d = 1 against the closed
    single-factor table (the independent oracle)."""
    r, n = mod.r, mod.n
    q0, q1 = mod.coeffs.q0, mod.coeffs.q1
    q2 = mod.coeffs.q * mod.coeffs.q

    def table(name: str, j: int) -> dict[int, Scalar]:
        res = j % n
        if name.startswith("h"):
            a = int(name[1:])
            if a in (0, r + 1):
                return {j: q2 if res == a % n else ONE}
            return {j: mod.coeffs.q if res in (a % n, (-a) % n) else ONE}
        i = int(name[1:])
        if name[0] == "e":
            if i == 0:
                if res == 1 % n:
                    return {j - 1: ONE}
                if res == (n - 1) % n:
                    return {j + 1: q0.inv()}
                return {}
            if i == r:
                return {j - 1: ONE, j + 1: ONE} if res == (r + 1) % n else {}
            if res == (i + 1) % n:
                return {j - 1: ONE}
            if res == (-(i + 1)) % n:
                return {j + 1: ONE}
            return {}
        if i == 0:
            return {j + 1: q1, j - 1: ONE} if res == 0 else {}
        if i == r:
            if res == r % n:
                return {j + 1: q0 * q1.inv()}
            if res == (r + 2) % n:
                return {j - 1: ONE}
            return {}
        if res == i % n:
            return {j + 1: ONE}
        if res == (-i) % n:
            return {j - 1: ONE}
        return {}

    names = ([f"e{i}" for i in range(r + 1)] + [f"f{i}" for i in range(r + 1)]
             + [f"h{a}" for a in range(r + 2)])
    lim = window_mult * n
    for name in names:
        op = mod.coideal_op(name)
        for j in range(-lim, lim + 1):
            got = op.on_basis((j,))
            want = mod.vec({(kk,): cc for kk, cc in table(name, j).items()})
            if not (got - want).is_zero():
                return {"generator": name, "index": j, "lhs": str(got), "rhs": str(want)}
    return None


# ---------------------------------------------------------------------------
# schur suites
# ---------------------------------------------------------------------------

def _build_schur_xlm(cfg: SuiteConfig) -> list[Check]:
    ctx = SchurContext(cfg.r, cfg.d, cfg.coeffs(), cfg.variant)
    checks = []
    for lam in ctx.compositions:
        def fn(lam=lam):
            x = ctx.x_elt(lam)
            for i in sorted(lam.weyl_gens()):
                got = ctx.H.mul_gen(x, i)
                want = x.scale(ctx.H.p_values[i])
                if got != want:
                    return {"lambda": list(lam), "i": i, "lhs": str(got), "rhs": str(want)}
                mgot = ctx.V.act_gen(ctx.M(lam), i)
                mwant = ctx.M(lam).scale(ctx.H.p_values[i])
                if not (mgot - mwant).is_zero():
                    return {"lambda": list(lam), "i": i, "module lhs": str(mgot), "rhs": str(mwant)}
            return None
        lam_s = ",".join(map(str, lam))
        checks.append(Check(f"xlm-{lam_s}", f"x_lam T_i = p_i x_lam for lam = ({lam_s})", fn))
    return checks


def psi_formula_rhs(ctx: SchurContext, kind: str, i: int, corrected: bool = True) -> SchurElt:
    """The combinatorial side of the five Psi formulas.  For e_r the stated
    end coefficient is q^{3(lam_{r+1}-1)} q0 q1^-1; the representation forces
    the inverse parameter factor, which `corrected` selects."""
    r = ctx.r
    out = SchurElt(ctx, {})
    for lam in ctx.compositions:
        nu = lam.tilde_e(i) if kind == "e" else lam.tilde_f(i)
        if nu is None or nu not in set(ctx.compositions):
            continue
        if kind == "e":
            if i != r:
                coef = Scalar.monomial(1, q=lam[i + 1] - 1)
            else:
                par = (Q0.inv() * Q1) if corrected else (Q0 * Q1.inv())
                coef = ctx.coeffs.map_scalar(par) * Scalar.monomial(1, q=3 * (lam[r + 1] - 1))
        else:
            if i == 0:
                coef = ctx.coeffs.q1 * Scalar.monomial(1, q=2 * (lam[0] - 1))
            elif i == r:
                coef = ctx.coeffs.q0 * ctx.coeffs.q1.inv() * Scalar.monomial(1, q=lam[r] - lam[r + 1] - 1)
            else:
                coef = Scalar.monomial(1, q=lam[i] - 1)
        out = out + ctx.phi(nu, lam, ctx.W.identity).scale(coef)
    return out


def _build_schur_psi(cfg: SuiteConfig) -> list[Check]:
    ctx = SchurContext(cfg.r, cfg.d, cfg.coeffs(), cfg.variant)
    r = cfg.r
    checks = []
    for i in range(r + 1):
        if i == r:
            def fn(i=i):
                return _schur_eq(ctx.psi(f"e{i}"), psi_formula_rhs(ctx, "e", i, corrected=True))
            checks.append(Check(f"psi-e{i}",
                                "Psi(e_r) = sum q^{3(lam_{r+1}-1)} q0^-1 q1 phi^e_{e~_r(lam),lam}"
                                " [parameter factor corrected, see notes]", fn))
        else:
            def fn(i=i):
                return _schur_eq(ctx.psi(f"e{i}"), psi_formula_rhs(ctx, "e", i))
            checks.append(Check(f"psi-e{i}",
                                f"Psi(e_{i}) = sum q^{{lam_{i + 1}-1}} phi^e_{{e~_{i}(lam),lam}}", fn))
    for i in range(r + 1):
        def fn(i=i):
            return _schur_eq(ctx.psi(f"f{i}"), psi_formula_rhs(ctx, "f", i))
        label = {0: "Psi(f_0) = sum q1 q^{2(lam_0-1)} phi^e",
                 r: "Psi(f_r) = sum q0 q1^-1 q^{lam_r-lam_{r+1}-1} phi^e"}.get(
            i, f"Psi(f_{i}) = sum q^{{lam_{i}-1}} phi^e")
        checks.append(Check(f"psi-f{i}", label, fn))

    def consistency():
        # the phi expansion of each image re-evaluates to the same images
        for name in (f"e{r}", "f0"):
            selt = ctx.psi(name)
            expansion = ctx.phi_expand(selt)
            rebuilt = SchurElt(ctx, {})
            for key, coef in expansion.items():
                rebuilt = rebuilt + ctx.phi_from_key(key).scale(coef)
            if rebuilt != selt:
                return {"generator": name}
        return None
    checks.append(Check("psi-expansion-consistency",
                        "phi expansions of Psi images re-evaluate exactly", consistency))
    return checks


def _build_schur_generate(cfg: SuiteConfig) -> list[Check]:
    ctx = SchurContext(cfg.r, cfg.d, cfg.coeffs(), cfg.variant)
    checks = []
    om = ctx.omega
    W = ctx.W

    comp_set = set(ctx.compositions)

    def products():
        # phi^e_{om,nu} o phi^e_{nu,om} = phi^e + phi^{s_i}; the product
        # coefficient on phi^{s_i} is 1 under the weighted T_X convention
        for i in range(cfg.d):
            nu = om.tilde_e(i)
            if nu is None or nu not in comp_set:
                continue
            prod = ctx.phi(om, nu, W.identity) @ ctx.phi(nu, om, W.identity)
            want = (ctx.phi(om, om, W.identity)
                    + ctx.phi(om, om, W.gens[i]))
            if prod != want:
                return {"i": i, "lhs": str(prod), "rhs": str(want)}
        return None
    checks.append(Check("product-ei",
                        "phi^e_{om,e~_i(om)} o phi^e_{e~_i(om),om} = phi^e + phi^{s_i}"
                        " (coefficient 1; see notes)", products))

    if cfg.variant == "jj":
        def product_sd():
            # move the last unit to slot r+1 along tilde-f steps; the final
            # step is tilde_f_r, so this is the f~_r partner composition
            target = None
            for lam in ctx.compositions:
                if lam.weyl_gens() == frozenset({cfg.d}):
                    target = lam
                    break
            if target is None:
                return {"error": "no composition with parabolic {s_d}"}
            prod = ctx.phi(om, target, W.identity) @ ctx.phi(target, om, W.identity)
            want = ctx.phi(om, om, W.identity) + ctx.phi(om, om, W.gens[cfg.d])
            if prod != want:
                return {"lhs": str(prod), "rhs": str(want)}
            return None
        checks.append(Check("product-fr",
                            "phi^e_{om,mu} o phi^e_{mu,om} = phi^e + phi^{s_d} for the"
                            " f~_r-side partner mu", product_sd))

    def idempotents():
        for lam in ctx.compositions:
            got = ctx.idempotent_from_recipe(lam)
            if got != ctx.idempotent(lam):
                return {"lambda": list(lam)}
        return None
    checks.append(Check("weight-idempotents",
                        "interpolated polynomials in the diagonal images equal phi^e_{lam,lam}",
                        idempotents))

    def chains():
        ctx.move_chains()
        return None
    checks.append(Check("move-chains",
                        "every composition is reachable from omega by nested moves", chains))

    def certificates():
        certs = generate_certificates(ctx, maxlen=cfg.genlen)
        expected = 0
        for lam in ctx.compositions:
            for mu in ctx.compositions:
                for g in W.ball(cfg.genlen):
                    if ctx.is_double_rep(lam, g, mu):
                        expected += 1
        if len(certs.certs) != expected:
            return {"produced": len(certs.certs), "expected": expected}
        return None
    checks.append(Check("generation-certificates",
                        f"verified generator words for every phi basis element with l(g) <= {cfg.genlen}",
                        certificates))
    return checks


# ---------------------------------------------------------------------------
# variants
# ---------------------------------------------------------------------------

def _build_variants(cfg: SuiteConfig) -> list[Check]:
    if cfg.variant == "jj":
        raise SuiteConfigError("the variants suite needs --variant ji, ij or ii")
    checks = []
    checks.extend(_build_module_relations(cfg))
    checks.extend(_build_commute(cfg))
    checks.extend(_build_coideal_serre(cfg))
    mod = TensorModule(cfg.r, cfg.d, cfg.coeffs(), cfg.variant)

    def t_formulas():
        return _t_single_factor_check(mod, cfg.window)
    checks.append(Check("t-closed-form",
                        "the lifted t action equals its single-factor closed form", t_formulas))

    def membership():
        ctx = SchurContext(cfg.r, cfg.d, cfg.coeffs(), cfg.variant)
        out = []
        if cfg.variant in ("ji", "ii"):
            out.append(("tr", ctx.W.gens[cfg.d]))
        if cfg.variant in ("ij", "ii"):
            out.append(("t0", ctx.W.gens[0]))
        for name, s in out:
            exp = ctx.phi_expand(ctx.psi(name))
            e = ctx.W.identity
            bad = [k for k in exp if not (k[0] == k[1] and k[2] in (s.key, e.key))]
            if bad:
                lam, mu, gkey = bad[0]
                return {"generator": name, "lambda": list(lam), "mu": list(mu)}
            if not any(k[2] == s.key for k in exp):
                return {"generator": name, "missing": "phi^{s} component"}
        return None
    checks.append(Check("psi-t-membership",
                        "Psi(t) lies in the span of diagonal phi^e and phi^{s} terms"
                        " (identity part included; see notes)", membership))
    return checks


def _t_single_factor_check(mod: TensorModule, window_mult: int) -> dict | None:
    n, r = mod.n, mod.r
    c = mod.coeffs
    lim = window_mult * n
    checksets = []
    if mod.variant in ("ji", "ii"):
        cc = (ONE - c.q0 * c.q1.inv()) / (c.q - c.q.inv())
        def want_tr(j: int) -> dict[int, Scalar]:
            res = j % n
            if res == r % n:
                return {j + 2: c.q0 * c.q1.inv(), j: cc * c.q.inv()}
            if res == (r + 2) % n:
                return {j - 2: ONE, j: cc * c.q}
            return {j: cc}
        checksets.append(("tr", want_tr))
    if mod.variant in ("ij", "ii"):
        cc2 = (c.q1 - c.q0.inv()) / (c.q - c.q.inv())
        def want_t0(j: int) -> dict[int, Scalar]:
            res = j % n
            if res == 1:
                return {j - 2: ONE, j: cc2 * c.q}
            if res == (n - 1) % n:
                return {j + 2: c.q0.inv() * c.q1, j: cc2 * c.q.inv()}
            return {j: cc2}
        checksets.append(("t0", want_t0))
    for name, want in checksets:
        one = TensorModule(mod.r, 1, mod.coeffs, mod.variant)
        op = one.coideal_op(name)
        for j in range(-lim, lim + 1):
            if not one.allowed((j,)):
                continue
            got = op.on_basis((j,))
            expect = one.vec({(kk,): vv for kk, vv in want(j).items()})
            if not (got - expect).is_zero():
                return {"generator": name, "index": j, "lhs": str(got), "rhs": str(expect)}
    return None


# ---------------------------------------------------------------------------
# specialize-consistency
# ---------------------------------------------------------------------------

def _build_specialize(cfg: SuiteConfig) -> list[Check]:
    checks: list[Check] = []
    quad_types = {
        "b2": ("(T0 - q1^-1)(T0 + q1) = 0 (two-parameter type B)", "q1", "q1"),
        "b1": ("(T0 - q^-1)(T0 + q) = 0 (equal-parameter type B)", "q", "q"),
        "d1": ("(T0 - 1)(T0 + 1) = 0 (type D)", "1", "1"),
    }
    for spec in ("b2", "b1", "d1"):
        sub = SuiteConfig("hecke-relations", r=cfg.r, d=cfg.d, spec=spec,
                          window=cfg.window, maxlen=cfg.maxlen)
        for check in _build_hecke_relations(sub):
            checks.append(Check(f"{spec}-{check.check_id}", f"[{spec}] {check.identity}", check.fn))
        subm = SuiteConfig("module-relations", r=cfg.r, d=cfg.d, spec=spec,
                           window=cfg.window, maxlen=cfg.maxlen)
        for check in _build_module_relations(subm):
            checks.append(Check(f"{spec}-{check.check_id}", f"[{spec}] {check.identity}", check.fn))
        subc = SuiteConfig("commute", r=cfg.r, d=cfg.d, spec=spec,
                           window=cfg.window, maxlen=cfg.maxlen)
        for check in _build_commute(subc):
            checks.append(Check(f"{spec}-{check.check_id}", f"[{spec}] {check.identity}", check.fn))

        def quad_type(spec=spec):
            coeffs = Coeffs.named(spec)
            label, a_name, b_name = quad_types[spec]
            vals = {"q": Q, "q1": Q1, "1": ONE}
            a, b = vals[a_name].inv(), -vals[b_name]
            if (coeffs.q0.inv(), -coeffs.q1) != (a, b):
                return {"expected roots": [str(a), str(b)],
                        "got": [str(coeffs.q0.inv()), str(-coeffs.q1)]}
            return None
        checks.append(Check(f"{spec}-t0-type", quad_types[spec][0], quad_type))

        def functorial(spec=spec):
            gen = TensorModule(cfg.r, cfg.d, Coeffs.generic())
            named = Coeffs.named(spec)
            spec_mod = TensorModule(cfg.r, cfg.d, named)
            sample = gen.window_indices(1)[:: max(1, len(gen.window_indices(1)) // 40)]
            ops_g = [("T0", gen.act_T0), ("Td", gen.act_Td)] + \
                [(f"T{i}", lambda v, i=i: gen.act_Ti(v, i)) for i in range(1, cfg.d)]
            ops_s = [("T0", spec_mod.act_T0), ("Td", spec_mod.act_Td)] + \
                [(f"T{i}", lambda v, i=i: spec_mod.act_Ti(v, i)) for i in range(1, cfg.d)]
            coideal = ["e0", f"e{cfg.r}", "f0", f"f{cfg.r}"]
            ops_g += [(nm, gen.coideal_op(nm)) for nm in coideal]
            ops_s += [(nm, spec_mod.coideal_op(nm)) for nm in coideal]
            for (nm, og), (_, os) in zip(ops_g, ops_s):
                for f in sample:
                    before = spec_mod.vec({g: named.map_scalar(c)
                                           for g, c in og(gen.basis(f)).terms.items()})
                    after = os(spec_mod.basis(f))
                    if not (before - after).is_zero():
                        return {"spec": spec, "op": nm, "index": list(f),
                                "specialize-then-act": str(after),
                                "act-then-specialize": str(before)}
            return None
        checks.append(Check(f"{spec}-functorial",
                            f"[{spec}] specializing before or after the action agrees", functorial))
    return checks


BUILDERS: dict[str, Callable[[SuiteConfig], list[Check]]] = {
    "hecke-relations": _build_hecke_relations,
    "braid-td": _build_braid_td,
    "module-relations": _build_module_relations,
    "commute": _build_commute,
    "coideal-serre": _build_coideal_serre,
    "schur-xlm": _build_schur_xlm,
    "schur-psi": _build_schur_psi,
    "schur-generate": _build_schur_generate,
    "variants": _build_variants,
    "specialize-consistency": _build_specialize,
}
