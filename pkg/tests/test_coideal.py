"""The quantum side: single-factor tables, the comultiplication lift, the
embedded coideal generators, their defining relations, and commutation with
the Hecke action."""

import pytest

from cschur.scalars import Q, Q0, Q1, Scalar
from cschur.suites import SuiteConfig, _single_factor_table_check, run_suite
from cschur.tensor import TensorModule

QI = Q.inv()


@pytest.fixture(scope="module")
def M1():
    return TensorModule(3, 1)


@pytest.fixture(scope="module")
def M2():
    return TensorModule(2, 2)


def test_glhat_single_factor(M1):
    n = M1.n
    E0 = M1.lift_E(0)
    assert E0.on_basis((1,)) == M1.basis((0,))
    assert E0.on_basis((2,)).is_zero()
    assert E0.on_basis((1 + n,)) == M1.basis((n,))
    D2 = M1.lift_D(2)
    assert D2.on_basis((2,)) == M1.basis((2,)).scale(Q)
    assert D2.on_basis((3,)) == M1.basis((3,))


def test_comultiplication_lift(M2):
    # E_0 (v_1 (x) v_1) = v_0 (x) (K_0^-1 v_1) + v_1 (x) (E_0 v_1)
    # with K_0 v_1 = q^-1 v_1, so the first summand carries q
    E0 = M2.lift_E(0)
    got = E0.on_basis((1, 1))
    want = M2.basis((0, 1)).scale(Q) + M2.basis((1, 0))
    assert got == want
    # F side puts K_0 on the left factors; K_0 v_0 = q v_0
    F0 = M2.lift_F(0)
    got = F0.on_basis((0, 0))
    want = M2.basis((1, 0)) + M2.basis((0, 1)).scale(Q)
    assert got == want


def test_single_factor_closed_form(M1):
    assert _single_factor_table_check(M1, 2) is None


def test_closed_form_examples(M1):
    r = M1.r
    assert M1.coideal_op("f0").on_basis((0,)) == (
        M1.basis((1,)).scale(Q1) + M1.basis((-1,)))
    assert M1.coideal_op(f"e{r}").on_basis((r + 1,)) == (
        M1.basis((r,)) + M1.basis((r + 2,)))
    assert M1.coideal_op(f"f{r}").on_basis((r,)) == (
        M1.basis((r + 1,)).scale(Q0 * Q1.inv()))


def test_h_eigenvalues(M1):
    q2 = Scalar.monomial(1, q=2)
    assert M1.coideal_op("h0").on_basis((0,)) == M1.basis((0,)).scale(q2)
    assert M1.coideal_op("h1").on_basis((1,)) == M1.basis((1,)).scale(Q)
    assert M1.coideal_op("h1").on_basis((-1,)) == M1.basis((-1,)).scale(Q)
    assert M1.coideal_op("h2").on_basis((1,)) == M1.basis((1,))
    hr1 = M1.coideal_op(f"h{M1.r + 1}")
    assert hr1.on_basis((M1.r + 1,)) == M1.basis((M1.r + 1,)).scale(q2)


def test_k_equals_h_ratio(M1):
    for i in range(M1.r + 1):
        ki = M1.coideal_op(f"k{i}")
        via_h = M1.coideal_op(f"h{i}") @ M1.coideal_op(f"h{i + 1}inv")
        for j in range(-M1.n, M1.n + 1):
            assert ki.on_basis((j,)) == via_h.on_basis((j,))


def test_coideal_relations_suite_d1():
    report = run_suite(SuiteConfig("coideal-serre", r=3, d=1, window=2))
    assert report.passed, [c.check_id for c in report.checks if c.status != "pass"]


def test_deformed_pairs_are_genuinely_deformed(M1):
    # the (0,0) and (r,r) commutators do not satisfy the undeformed relation
    qmq = (Q - QI).inv()
    for i in (0, M1.r):
        e = M1.coideal_op(f"e{i}")
        f = M1.coideal_op(f"f{i}")
        k = M1.coideal_op(f"k{i}")
        ki = M1.coideal_op(f"k{i}inv")
        lhs = e @ f - f @ e
        rhs = (k - ki).scale(qmq)
        broken = any(not (lhs.on_basis((j,)) - rhs.on_basis((j,))).is_zero()
                     for j in range(-M1.n, M1.n + 1))
        assert broken


def test_commute_small_window_d2(M2):
    win = [f for f in M2.window_indices(1) if sum(map(abs, f)) % 3 == 0]
    for gname in M2.coideal_generator_names():
        cop = M2.coideal_op(gname)
        for hname in ("T0", "T1", "T2", "X1", "X2"):
            hop = M2.hecke_op(hname)
            for f in win:
                v = M2.basis(f)
                assert (hop(cop(v)) - cop(hop(v))).is_zero(), (gname, hname, f)


def test_specialized_coideal_relations_d1():
    report = run_suite(SuiteConfig("coideal-serre", r=2, d=1, window=2, spec="b1"))
    assert report.passed
