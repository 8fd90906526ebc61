import pytest
from hypothesis import given, settings, strategies as st

from latdeg.hull import HullCapError, affine_coordinates, brute_force_facets, double_description

pts2 = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=3, max_size=9)
pts3 = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), min_size=4, max_size=9)


def full_dim(points):
    _, d = affine_coordinates(sorted(set(points)))
    return d == len(points[0])


def test_square_facets():
    facets = brute_force_facets([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert facets == [((-1, 0), -1), ((0, -1), -1), ((0, 1), 0), ((1, 0), 0)]


def test_triangle_facets():
    facets = brute_force_facets([(0, 0), (2, 0), (0, 2), (1, 1)])
    assert ((-1, -1), -2) in facets and len(facets) == 3


def test_caps():
    with pytest.raises(HullCapError):
        brute_force_facets([(i, i * i) for i in range(31)])
    with pytest.raises(ValueError):
        brute_force_facets([(0, 0), (1, 1), (2, 2)])


@settings(max_examples=80, deadline=None)
@given(st.one_of(pts2, pts3))
def test_double_description_matches_brute_force(points):
    if not full_dim(points):
        return
    hull = double_description(points)
    # points already full-dimensional, so the HNF frame is a lattice
    # transformation of the input; compare facet counts and incidences
    brute = brute_force_facets(points)
    assert len(hull.facets) == len(brute)
    pts = sorted(set(points))
    brute_inc = set(frozenset(i for i, p in enumerate(pts) if sum(a * b for a, b in zip(n, p)) == c)
                      for n, c in brute)
    assert set(hull.incidence) == brute_inc


def test_double_description_square_in_space():
    # a unit square lying in a plane of Z^3
    hull = double_description([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1), (0, 0, 1)])
    assert hull.dim == 2
    assert len(hull.facets) == 4
    assert len(hull.vertex_indices()) == 4
    assert len(hull.edges()) == 4


def test_double_description_vertices_skip_interior_points():
    hull = double_description([(0, 0), (4, 0), (0, 4), (1, 1), (2, 2)])
    assert sorted(hull.points[i] for i in hull.vertex_indices()) == [(0, 0), (0, 4), (4, 0)]
    assert len(hull.edges()) == 3


def test_double_description_point_and_segment():
    assert double_description([(3, 3)]).dim == 0
    seg = double_description([(0, 0), (2, 2), (1, 1)])
    assert seg.dim == 1
    assert sorted(seg.points[i] for i in seg.vertex_indices()) == [(0, 0), (2, 2)]
    assert len(seg.edges()) == 1
