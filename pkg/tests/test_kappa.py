from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappacalc.exactmath import MultiPoly, format_poly, parse_poly
from kappacalc.kappa import (
    FIBER_VARS,
    SYMBOLIC_VARS,
    class_of_symbolic,
    cover_scale,
    fiber_relation,
    h_coefficients,
    kappa_class,
    kappa_numerator,
    pushforward_poly,
    reduce_h,
    symbolic_L,
    universal_L,
)
from kappacalc.targets import KAPPA_NUMERATORS


def h(k=1):
    return MultiPoly.var(FIBER_VARS, "h") ** k


def test_fiber_relation_pushes_to_zero():
    assert reduce_h(fiber_relation()).is_zero()
    assert pushforward_poly(fiber_relation() * h(2)).is_zero()


def test_pushforward_of_powers_of_h():
    one = MultiPoly.constant(FIBER_VARS, 1)
    assert pushforward_poly(h(0)).is_zero()
    assert pushforward_poly(h(1)).is_zero()
    assert pushforward_poly(h(2)) == one
    # h^3 = c3 - c2 h, h^4 = c3 h - c2 h^2
    assert pushforward_poly(h(3)).is_zero()
    assert pushforward_poly(h(4)) == -MultiPoly.var(FIBER_VARS, "c2")


base_names = st.lists(st.sampled_from(["z1", "z4", "c2", "c3"]), max_size=3)


@settings(max_examples=50)
@given(base_names, st.integers(0, 6), st.integers(-3, 3))
def test_projection_formula(names, k, c):
    a = MultiPoly.constant(FIBER_VARS, c or 1)
    for n in names:
        a = a * MultiPoly.var(FIBER_VARS, n)
    x = h(k) + MultiPoly.var(FIBER_VARS, "z2") * h(max(k - 1, 0))
    assert pushforward_poly(a * x) == a * pushforward_poly(x)


def test_h_coefficients_reconstruct():
    p = h(5) + MultiPoly.var(FIBER_VARS, "z1") * h(3)
    a0, a1, a2 = h_coefficients(p)
    assert a0 + a1 * h() + a2 * h(2) == reduce_h(p)


def test_L_equals_half_h_plus_s1():
    s1 = MultiPoly.zero(FIBER_VARS)
    for i in range(1, 8):
        s1 = s1 + MultiPoly.var(FIBER_VARS, f"z{i}")
    assert universal_L() == (h() + s1).scale(Fraction(1, 2))


@pytest.mark.parametrize("l", range(7))
def test_numerators(l):
    assert kappa_numerator(l) == parse_poly(KAPPA_NUMERATORS[l], SYMBOLIC_VARS)


@pytest.mark.parametrize("l", range(7))
def test_classes(ring, l):
    want = class_of_symbolic(KAPPA_NUMERATORS[l], ring, degree=l).scale(Fraction(1, 2 ** (l + 2)))
    assert kappa_class(l, ring) == want
    assert not kappa_class(l, ring).is_zero()


def test_kappa_range():
    with pytest.raises(ValueError):
        kappa_class(7)
    with pytest.raises(ValueError):
        kappa_numerator(-1)


def test_symbolic_L_text():
    assert format_poly(symbolic_L()) == "1/2*s1 + 1/2*h"


def test_cover_scale():
    assert cover_scale(3) == 8
    with pytest.raises(ValueError):
        cover_scale(-1)
