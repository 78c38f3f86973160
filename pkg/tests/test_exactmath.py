from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappacalc.exactmath import (
    MultiPoly,
    VarTable,
    divide_exact,
    elementary_symmetric,
    format_poly,
    parse_poly,
    substitute,
)

VT = VarTable.of([("x", 1), ("y", 1), ("c", 2)])

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
monos = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
polys = st.dictionaries(monos, coeffs, max_size=6).map(lambda d: MultiPoly(VT, d))


@settings(max_examples=1000)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MultiPoly.zero(VT)
    assert a * MultiPoly.constant(VT, 1) == a


@given(polys, polys)
def test_degree_is_additive(a, b):
    if a.is_homogeneous() and b.is_homogeneous() and a and b:
        assert (a * b).is_homogeneous()
        assert (a * b).degree() == a.degree() + b.degree()


@given(polys)
def test_format_parse_roundtrip(p):
    assert parse_poly(format_poly(p), VT) == p


@given(polys, polys)
def test_exact_division_recovers_factor(a, b):
    if b:
        assert divide_exact(a * b, b) == a


def test_division_with_remainder_raises():
    x, y = MultiPoly.var(VT, "x"), MultiPoly.var(VT, "y")
    with pytest.raises(ArithmeticError):
        divide_exact(x * x + y, x)


def test_canonical_text():
    p = parse_poly("3*x^2*c - 1/2*c^2 + (x+y)^2 - x^2", VT)
    # graded order: weighted degree first, so c^2 precedes x*y
    assert format_poly(p) == "3*x^2*c - 1/2*c^2 + 2*x*y + y^2"
    assert p.degree() == 4 and not p.is_homogeneous()


def test_weighted_degree():
    c = MultiPoly.var(VT, "c")
    assert c.degree() == 2
    assert (c * MultiPoly.var(VT, "x")).degree() == 3


def test_parse_errors():
    with pytest.raises(KeyError):
        parse_poly("x + w", VT)
    with pytest.raises(ValueError):
        parse_poly("x +", VT)


def test_elementary_symmetric():
    e2 = elementary_symmetric(2, ["x", "y"], VT)
    assert e2 == MultiPoly.var(VT, "x") * MultiPoly.var(VT, "y")
    with pytest.raises(ValueError):
        elementary_symmetric(3, ["x", "y"], VT)


@given(polys)
def test_substitution_homomorphism(p):
    x, y = MultiPoly.var(VT, "x"), MultiPoly.var(VT, "y")
    swap = {"x": y, "y": x}
    assert substitute(substitute(p, swap), swap) == p
    shift = {"x": x + y}
    assert substitute(p * p, shift) == substitute(p, shift) ** 2


def test_rational_coefficients_stay_exact():
    p = MultiPoly.var(VT, "x").scale(Fraction(1, 3))
    assert (p * 3).coefficient((1, 0, 0)) == 1
