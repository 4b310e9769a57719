"""The ji / ij / ii settings: restricted subspaces, relabeled generator
tables, t-generator formulas and relations, and the variant Schur data."""

import pytest

from cschur.scalars import ONE, Q, Q0, Q1
from cschur.schur import SchurContext, generate_certificates
from cschur.suites import SuiteConfig, _t_single_factor_check, run_suite
from cschur.tensor import TensorModule


def test_tr_single_factor():
    mod = TensorModule(3, 1, variant="ji")
    assert _t_single_factor_check(mod, 2) is None


def test_t0_single_factor():
    mod = TensorModule(3, 1, variant="ij")
    assert _t_single_factor_check(mod, 2) is None


def test_tr_examples():
    r = 3
    mod = TensorModule(r, 1, variant="ji")
    tr = mod.coideal_op("tr")
    cc = (ONE - Q0 * Q1.inv()) / (Q - Q.inv())
    got = tr.on_basis((r,))
    want = mod.vec({(-r + mod.n,): Q0 * Q1.inv(), (r,): cc * Q.inv()})
    assert got == want
    got = tr.on_basis((1,))
    assert got == mod.basis((1,)).scale(cc)


def test_t0_examples():
    r = 3
    mod = TensorModule(r, 1, variant="ij")
    t0 = mod.coideal_op("t0")
    cc = (Q1 - Q0.inv()) / (Q - Q.inv())
    got = t0.on_basis((-1,))
    want = mod.vec({(1,): Q0.inv() * Q1, (-1,): cc * Q.inv()})
    assert got == want


def test_variant_stability_under_hecke():
    for variant in ("ji", "ij", "ii"):
        r = 2
        mod = TensorModule(r, 2, variant=variant)
        for f in mod.window_indices(1)[::5]:
            v = mod.basis(f)
            for i in range(3):
                for g in mod.act_gen(v, i).terms:
                    assert mod.allowed(g), (variant, f, i)


def test_ii_t_commute():
    mod = TensorModule(2, 2, variant="ii")
    t0 = mod.coideal_op("t0")
    tr = mod.coideal_op("tr")
    for f in mod.window_indices(1)[::3]:
        v = mod.basis(f)
        assert (t0(tr(v)) - tr(t0(v))).is_zero()


def test_serre_t_relations_d1():
    r = 3
    mod = TensorModule(r, 1, variant="ji")
    tr = mod.coideal_op("tr")
    e = mod.coideal_op(f"e{r - 1}")
    qpq = Q + Q.inv()
    window = [(j,) for j in range(-mod.n, mod.n + 1) if mod.allowed((j,))]
    lhs = (tr @ tr) @ e + e @ (tr @ tr)
    rhs = (tr @ e @ tr).scale(qpq) + e.scale(Q0 * Q1.inv())
    for f in window:
        assert (lhs.on_basis(f) - rhs.on_basis(f)).is_zero()


def test_serreij_d1():
    mod = TensorModule(3, 1, variant="ij")
    t0 = mod.coideal_op("t0")
    e1 = mod.coideal_op("e1")
    qpq = Q + Q.inv()
    lhs = (t0 @ t0) @ e1 + e1 @ (t0 @ t0)
    rhs = (t0 @ e1 @ t0).scale(qpq) + e1.scale(Q0.inv() * Q1)
    for j in range(-mod.n, mod.n + 1):
        if mod.allowed((j,)):
            assert (lhs.on_basis((j,)) - rhs.on_basis((j,))).is_zero()


def test_psi_t_membership_ji():
    ctx = SchurContext(3, 2, variant="ji")
    exp = ctx.phi_expand(ctx.psi("tr"))
    sd = ctx.W.gens[ctx.d]
    e = ctx.W.identity
    assert all(k[0] == k[1] and k[2] in (sd.key, e.key) for k in exp)
    assert any(k[2] == sd.key for k in exp)


def test_variant_certificates():
    ctx = SchurContext(2, 2, variant="ii")
    certs = generate_certificates(ctx, maxlen=2)
    count = sum(1 for lam in ctx.compositions for mu in ctx.compositions
                for g in ctx.W.ball(2) if ctx.is_double_rep(lam, g, mu))
    assert len(certs.certs) == count


def test_variant_suite_small():
    report = run_suite(SuiteConfig("variants", r=2, d=2, variant="ii", window=1))
    assert report.passed, [c.check_id for c in report.checks if c.status != "pass"]


def test_variants_suite_rejects_jj():
    from cschur.suites import SuiteConfigError
    with pytest.raises(SuiteConfigError):
        run_suite(SuiteConfig("variants", r=3, d=2, variant="jj"))


def test_ii_precondition():
    from cschur.suites import SuiteConfigError
    with pytest.raises(SuiteConfigError):
        SuiteConfig("variants", r=2, d=1, variant="ii").validate()
