"""Field arithmetic: frozen examples, algebra laws, and a sympy cross-check."""

import pytest
from hypothesis import given, strategies as st

from cschur.scalars import (
    Coeffs, ONE, Q, Q0, Q1, Scalar, SPECIALIZATIONS, SpecializationError, ZERO,
    format_scalar, integer, parse_scalar, specialize,
)

QI = Q.inv()


def test_additive_inverse():
    assert Q + (-Q) == ZERO
    assert (Q - QI) + QI == Q


def test_add_fractions_reduces():
    got = ONE / (Q - ONE) + ONE / (Q + ONE)
    assert got == parse_scalar("2*q/(q^2 - 1)")


def test_difference_of_squares():
    assert (Q - QI) * (Q + QI) == Q * Q - QI * QI


def test_monomial_inverses():
    assert Q0.inv() * Q0 == ONE
    assert (Q0.inv() * Q1).inv() == Q0 * Q1.inv()
    x = (Q * Q - ONE) / Q
    assert x.inv() == Q / (Q * Q - ONE)


def test_embedding_coefficient_cancellation():
    # the scalar (1 - q0 q1^-1)/(q - q^-1) times (q - q^-1)
    c = (ONE - Q0 * Q1.inv()) / (Q - QI)
    assert c * (Q - QI) == ONE - Q0 * Q1.inv()


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()


def test_specialize_examples():
    assert specialize(Q0.inv() * Q1, SPECIALIZATIONS["b1"]) == ONE
    assert specialize(Q1 - Q0.inv(), SPECIALIZATIONS["d1"]) == ZERO
    x = Q0 * Q1.inv() * Scalar.monomial(1, q=4)
    assert specialize(x, SPECIALIZATIONS["b1"]) == Scalar.monomial(1, q=4)
    assert specialize(Q0, SPECIALIZATIONS["b2"]) == Q1


def test_specialize_vanishing_denominator():
    x = ONE / (Q0 - Q1)
    with pytest.raises(SpecializationError):
        specialize(x, SPECIALIZATIONS["b1"])


def test_coeffs_named():
    c = Coeffs.named("b1")
    assert c.q0 == Q and c.q1 == Q
    assert Coeffs.named("d1").q1 == ONE
    with pytest.raises(ValueError):
        Coeffs.named("nope")


# -- randomized structure ----------------------------------------------------

coeff_ints = st.integers(min_value=-4, max_value=4)
exps = st.integers(min_value=0, max_value=3)


@st.composite
def polys(draw):
    terms = draw(st.lists(st.tuples(exps, exps, exps, coeff_ints), max_size=4))
    out = {}
    for a, b, c, v in terms:
        out[(a, b, c)] = out.get((a, b, c), 0) + v
    return {m: c for m, c in out.items() if c}


@st.composite
def scalars(draw):
    num = draw(polys())
    den = draw(polys().filter(bool))
    return Scalar(num, den)


@given(scalars(), scalars(), scalars())
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


@given(scalars())
def test_canonical_idempotent(x):
    assert Scalar(dict(x.num), dict(x.den)) == x
    if not x.is_zero():
        assert x * x.inv() == ONE


@given(scalars())
def test_parse_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(scalars(), scalars())
def test_specialize_is_ring_hom(x, y):
    for name in ("b2", "b1", "d1"):
        asg = SPECIALIZATIONS[name]
        try:
            sx, sy = specialize(x, asg), specialize(y, asg)
            sxy = specialize(x * y, asg)
            sadd = specialize(x + y, asg)
        except SpecializationError:
            continue
        assert sxy == sx * sy
        assert sadd == sx + sy


@given(scalars(), scalars())
def test_sympy_oracle(x, y):
    sympy = pytest.importorskip("sympy")
    q, q0, q1 = sympy.symbols("q q0 q1")

    def to_sympy(s):
        return sympy.sympify(format_scalar(s).replace("^", "**"),
                             locals={"q": q, "q0": q0, "q1": q1})

    assert sympy.simplify(to_sympy(x + y) - (to_sympy(x) + to_sympy(y))) == 0
    assert sympy.simplify(to_sympy(x * y) - to_sympy(x) * to_sympy(y)) == 0
