import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from kappacalc.polytope import (
    DimensionError,
    LatticePolytope,
    PointFileError,
    ResourceError,
    cross_polytope,
    ehrhart_count,
    ehrhart_volume,
    f_vector,
    facet_volumes,
    format_points,
    hexagon,
    int_det,
    is_reflexive,
    lattice_volume,
    minkowski_scaled,
    parse_points,
    polar_dual,
    simplex,
    translate,
    unit_cube,
    volume_from_counts,
)


def test_simplex():
    P = simplex(4)
    assert len(P.vertices) == 5 and len(P.facets) == 5
    assert f_vector(P) == (1, 5, 10, 10, 5, 1)
    assert lattice_volume(P) == 1
    assert facet_volumes(P) == [(1, 4)] * 5
    assert not is_reflexive(P)[0]


def test_cross_polytope():
    P = cross_polytope(4)
    ok, interior = is_reflexive(P)
    assert ok and interior == [(0, 0, 0, 0)]
    assert f_vector(P) == (1, 8, 24, 32, 16, 1)
    assert lattice_volume(P) == 16


def test_hexagon():
    P = hexagon()
    assert len(P.vertices) == 6 and f_vector(P) == (1, 6, 6, 1)
    assert lattice_volume(P) == 6
    assert sorted(facet_volumes(P)) == [(1, 2)] * 6
    assert is_reflexive(P) == (True, [(0, 0)])
    assert ehrhart_count(P, 1) == 7
    # Pick: area = interior + boundary/2 - 1, and normalised volume = 2 * area
    assert 2 * (1 + 6 / 2 - 1) == lattice_volume(P)


def test_unit_square_dilation():
    assert ehrhart_count(unit_cube(2), 2) == 9


def test_nonsimplicial_facets_are_exact():
    P = unit_cube(4)
    assert f_vector(P) == (1, 16, 32, 24, 8, 1)
    assert facet_volumes(P) == [(6, 8)] * 8


def test_dimension_errors():
    flat = LatticePolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert flat.affine_dim == 2 and flat.f_vector() == (1, 3, 3, 1)
    with pytest.raises(DimensionError):
        flat.lattice_volume()
    with pytest.raises(DimensionError):
        is_reflexive(flat)


def test_resource_limit():
    with pytest.raises(ResourceError):
        ehrhart_count(cross_polytope(4), 30, limit=1000)


def test_minkowski_basics():
    seg1 = LatticePolytope([(0, 0), (1, 0)])
    seg2 = LatticePolytope([(0, 0), (0, 1)])
    assert set(minkowski_scaled(seg1, seg2).vertices) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    origin = LatticePolytope([(0, 0)])
    H = hexagon()
    assert minkowski_scaled(H, origin).vertices == H.vertices
    assert lattice_volume(minkowski_scaled(H, H, 2)) == 9 * 6
    with pytest.raises(ValueError):
        minkowski_scaled(H, simplex(3))


def test_polar_duals():
    assert set(polar_dual(hexagon()).vertices) == {f.normal for f in hexagon().facets}
    D = polar_dual(cross_polytope(4))
    assert D.f_vector() == unit_cube(4).f_vector()
    assert is_reflexive(D)[0]
    with pytest.raises(ValueError):
        polar_dual(simplex(4))


def test_finite_difference_oracle():
    # L(t) = (t+1)^2 for the unit square; second difference is 2 = 2! * area
    assert volume_from_counts([1, 4, 9]) == 2


def test_int_det():
    assert int_det([[2, 0, 1], [1, 3, 2], [1, 1, 2]]) == 6
    assert int_det([[1, 2], [2, 4]]) == 0


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_int_det_matches_sympy(m):
    assert int_det(m) == sympy.Matrix(m).det()


point_sets = st.lists(st.tuples(*[st.integers(-2, 2)] * 3), min_size=4, max_size=14)


@settings(max_examples=80)
@given(point_sets)
def test_random_hulls(points):
    P = LatticePolytope(points)
    assert set(P.vertices) <= set(P.points)
    if not P.is_full_dimensional:
        return
    f = P.f_vector()
    assert f[1] - f[2] + f[3] == 2  # Euler in dimension 3
    n = len(P.vertices)
    vol = P.lattice_volume()
    assert vol == P.lattice_volume(list(range(n))[::-1])
    assert vol == ehrhart_volume(P)
    for x in P.points:
        assert P.contains(x)
    # every facet's vertex set is exactly the input points on its hyperplane
    for fct in P.facets:
        on = {p for p in P.points if sum(a * b for a, b in zip(fct.normal, p)) == fct.offset}
        assert {P.vertices[i] for i in fct.vertices} <= on
        assert math.gcd(*fct.normal) == 1


@settings(max_examples=25)
@given(st.lists(st.tuples(*[st.integers(-1, 1)] * 4), min_size=5, max_size=12))
def test_random_4d_euler(points):
    P = LatticePolytope(points)
    if P.is_full_dimensional:
        f = P.f_vector()
        assert f[1] - f[2] + f[3] - f[4] == 0
        assert P.lattice_volume() == ehrhart_volume(P)


@settings(max_examples=40)
@given(point_sets, point_sets)
def test_minkowski_commutes(a, b):
    P, Q = LatticePolytope(a), LatticePolytope(b)
    assert set(minkowski_scaled(P, Q).vertices) == set(minkowski_scaled(Q, P).vertices)


@given(st.tuples(*[st.integers(-5, 5)] * 2))
def test_reflexivity_is_translation_invariant(v):
    ok, interior = is_reflexive(translate(hexagon(), v))
    assert ok and interior == [v]


def test_point_file_roundtrip():
    pts = [(0, 0, 0), (1, -2, 3)]
    text = format_points(pts, "two points")
    assert text.splitlines()[:2] == ["# two points", "dim 3 count 2"]
    assert parse_points(text) == pts


@pytest.mark.parametrize("text,line", [
    ("dim 2 count 1\n1 2 3\n", 2),
    ("# c\ndim 2 count 1\n1 a\n", 3),
    ("dims 2 count 1\n", 1),
])
def test_point_file_errors(text, line):
    with pytest.raises(PointFileError, match=f":{line}:"):
        parse_points(text)


def test_point_file_count_mismatch():
    with pytest.raises(PointFileError):
        parse_points("dim 1 count 2\n5\n")
