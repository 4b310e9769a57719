"""Hecke algebra in the Coxeter basis: generator quadratics, braid words,
Bernstein elements, parabolic sums and their eigen-relations."""

import pytest

from cschur.hecke import HeckeAlgebra
from cschur.scalars import Coeffs, ONE, Q, Q0, Q1
from cschur.weyl import WeylGroup

QI = Q.inv()


@pytest.fixture(scope="module")
def H1():
    return HeckeAlgebra(WeylGroup(1, 6))


@pytest.fixture(scope="module")
def H2():
    return HeckeAlgebra(WeylGroup(2, 8))


def test_mul_by_gen_lengthens(H2):
    t0 = H2.T([0])
    assert t0 == H2.elt({H2.W.gens[0]: ONE})
    t01 = H2.mul_gen(t0, 1)
    assert t01 == H2.T(H2.W.word_elt([0, 1]))


def test_mul_by_gen_quadratic(H2):
    s0 = H2.W.gens[0]
    got = H2.mul_gen(H2.T([0]), 0)
    want = H2.elt({s0: Q0.inv() - Q1, H2.W.identity: Q0.inv() * Q1})
    assert got == want
    s1 = H2.W.gens[1]
    got = H2.mul_gen(H2.T([1]), 1)
    want = H2.elt({s1: QI - Q, H2.W.identity: ONE})
    assert got == want


def test_left_multiplication(H2):
    h = H2.T([0, 1])
    lhs = H2.mul_word(h, [1], side="left")  # T1 * T_{s0 s1}
    rhs = H2.mul(H2.T([1]), h)
    assert lhs == rhs


def test_word_products(H2):
    assert H2.T([]) == H2.one()
    assert H2.T([0, 1]) == H2.elt({H2.W.word_elt([0, 1]): ONE})
    assert H2.T([0, 1, 0, 1]) == H2.T([1, 0, 1, 0])


def test_gen_inverse(H2):
    assert H2.gen_inverse(1) == H2.T([1]) + H2.one().scale(Q - QI)
    for i in range(3):
        assert H2.mul(H2.gen_inverse(i), H2.T([i])) == H2.one()
        assert H2.mul(H2.T([i]), H2.gen_inverse(i)) == H2.one()


def test_X1_d1(H1):
    assert H1.X(1) == H1.T([1, 0]).scale(Q0)
    assert H1.mul(H1.X(1), H1.X_inv(1)) == H1.one()


def test_build_Td(H1, H2):
    assert H1.build_Td() == H1.T([1])
    assert H2.build_Td() == H2.T([2])


def test_braid_lemma(H2):
    d = 2
    t = H2.T([d])
    a, b = Q1.inv(), -Q0.inv()
    quad = H2.mul(t - H2.one().scale(a), t - H2.one().scale(b))
    assert quad.is_zero()
    assert H2.T([2, 0]) == H2.T([0, 2])
    assert H2.T([1, 2, 1, 2]) == H2.T([2, 1, 2, 1])


def test_X_relations(H2):
    assert H2.mul(H2.X(1), H2.X(2)) == H2.mul(H2.X(2), H2.X(1))
    lhs = H2.mul(H2.mul(H2.T([0]), H2.X_inv(1)), H2.T([0]))
    c = Q0.inv() * Q1
    assert lhs == H2.X(1).scale(c) + H2.T([0]).scale(c - ONE)
    assert H2.mul(H2.mul(H2.T([1]), H2.X(1)), H2.T([1])) == H2.X(2)


def test_q_w_values(H1, H2):
    assert H1.q_w(H1.W.identity) == ONE
    assert H1.q_w(H1.W.gens[0]) == Q1
    assert H1.q_w(H1.W.gens[1]) == Q0.inv()
    assert H2.q_w(H2.W.gens[1]) == Q
    g = H2.W.word_elt([0, 1, 2])
    assert H2.q_w(g) == Q1 * Q * Q0.inv()


def test_x_parabolic_d1(H1):
    x = H1.x_parabolic({1})
    assert x == H1.one() + H1.T([1]).scale(Q0)
    assert H1.mul_gen(x, 1) == x.scale(Q1.inv())
    y = H1.x_parabolic({0})
    assert y == H1.one() + H1.T([0]).scale(Q1.inv())
    assert H1.mul_gen(y, 0) == y.scale(Q0.inv())


def test_x_parabolic_middle_eigen(H2):
    x = H2.x_parabolic({1})
    assert H2.mul_gen(x, 1) == x.scale(QI)


def test_T_X_empty_and_identity(H2):
    assert H2.T_X([]) == H2.zero()
    assert H2.T_X([H2.W.identity]) == H2.one()


def test_specialized_algebra_roots():
    H = HeckeAlgebra(WeylGroup(2, 8), Coeffs.named("d1"))
    a, b = H.roots[0]
    assert a == ONE and b == -ONE
    t0 = H.T([0])
    assert H.mul(t0, t0) == H.one()


def test_format_parse_roundtrip_via_cache(H2):
    data = H2._elt_to_cache(H2.X(1))
    assert H2._elt_from_cache(data) == H2.X(1)
