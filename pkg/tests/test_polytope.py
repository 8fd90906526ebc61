import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from latdeg.construct import cayley, exceptional_simplex, lawrence_prism, random_unimodular, scramble
from latdeg.exactmath import rank
from latdeg.hull import brute_force_facets
from latdeg.polytope import AffineMap, LatticePolytope, is_lattice_surjection, segment_points

SQUARE = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
TRIANGLE = exceptional_simplex(2)


def box_count(points, k, interior=False):
    """Count lattice points of k*conv(points) by scanning a bounding box (full-dimensional only)."""
    scaled = [tuple(k * x for x in p) for p in points]
    facets = brute_force_facets(scaled)
    lo = [min(p[i] for p in scaled) for i in range(len(scaled[0]))]
    hi = [max(p[i] for p in scaled) for i in range(len(scaled[0]))]
    n = 0
    for x in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        vals = [sum(a * b for a, b in zip(nv, x)) - c for nv, c in facets]
        if all(v > 0 for v in vals) if interior else all(v >= 0 for v in vals):
            n += 1
    return n


full_dim_points = st.one_of(
    st.lists(st.tuples(st.integers(-2, 3), st.integers(-2, 3)), min_size=3, max_size=7),
    st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), min_size=4, max_size=7),
).filter(lambda pts: LatticePolytope(pts).dim == len(pts[0]))


def test_dimension():
    assert LatticePolytope([(3, 4)]).dim == 0
    assert SQUARE.dimension() == 2
    seg3, seg2 = LatticePolytope([(0,), (3,)]), LatticePolytope([(0,), (2,)])
    assert cayley([seg3, seg2]).dim == 2


def test_restrict_segment():
    seg = LatticePolytope([(0, 0), (2, 2)])
    reduced, frame = seg.restrict_to_affine_hull()
    assert reduced.ambient_dim == 1 and sorted(reduced.vertices) == [(0,), (2,)]
    assert seg.count_lattice_points(1) == reduced.count_lattice_points(1) == 3
    assert {frame(v)[1] for v in seg.vertices} == {0}
    with pytest.raises(ValueError):
        SQUARE.restrict_to_affine_hull()


def test_restrict_triangle_in_space():
    tri = LatticePolytope([(0, 0, 1), (2, 0, 1), (0, 1, 1)])
    reduced, _ = tri.restrict_to_affine_hull()
    assert reduced.dim == 2 and reduced.ambient_dim == 2
    assert tri.count_lattice_points(1) == reduced.count_lattice_points(1) == 4


def test_vertices():
    assert LatticePolytope([(0,), (1,), (2,)]).vertices == ((0,), (2,))
    assert len(SQUARE.vertices) == 4
    assert set(lawrence_prism((3, 2)).vertices) == {(0, 0), (0, 3), (1, 0), (1, 2)}
    assert set(LatticePolytope([(0, 0), (4, 0), (0, 4), (1, 1), (2, 2), (1, 0)]).vertices) == {(0, 0), (4, 0), (0, 4)}


def test_facets():
    assert sorted(SQUARE.facets) == [((-1, 0), -1), ((0, -1), -1), ((0, 1), 0), ((1, 0), 0)]
    assert ((-1, -1), -2) in TRIANGLE.facets and len(TRIANGLE.facets) == 3
    assert len(LatticePolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]).facets) == 4


def test_counts():
    assert SQUARE.count_lattice_points(1) == 4
    assert SQUARE.count_lattice_points(2) == 9
    assert SQUARE.count_interior_lattice_points(2) == 1
    assert TRIANGLE.count_lattice_points(1) == 6
    assert TRIANGLE.count_interior_lattice_points(1) == 0
    assert TRIANGLE.interior_lattice_points(2) == [(1, 1), (1, 2), (2, 1)]
    for p in (SQUARE, TRIANGLE, LatticePolytope([(1, 1, 1)])):
        assert p.count_lattice_points(0) == 1
        assert p.count_interior_lattice_points(0) == 0


@settings(max_examples=60, deadline=None)
@given(full_dim_points, st.integers(1, 3))
def test_counts_match_box_scan(points, k):
    p = LatticePolytope(points)
    assert p.count_lattice_points(k) == box_count(points, k)
    assert p.count_interior_lattice_points(k) == box_count(points, k, interior=True)
    assert len(p.lattice_points(k)) == p.count_lattice_points(k)


@settings(max_examples=60, deadline=None)
@given(full_dim_points, st.integers(0, 10_000), st.integers(0, 2))
def test_counts_invariant_under_unimodular_maps(points, seed, extra):
    p = LatticePolytope(points)
    lifted = LatticePolytope([q + (0,) * extra for q in points])
    image, _ = scramble(lifted, seed)
    for k in (1, 2):
        assert image.count_lattice_points(k) == p.count_lattice_points(k)
        assert image.count_interior_lattice_points(k) == p.count_interior_lattice_points(k)


@settings(max_examples=40, deadline=None)
@given(full_dim_points)
def test_every_generator_satisfies_every_facet(points):
    p = LatticePolytope(points)
    for g in p.generators:
        assert p.contains(g)
        assert all(sum(a * b for a, b in zip(n, g)) >= c for n, c in p.facets)


def test_lattice_points_lie_in_polytope():
    tri = LatticePolytope([(0, 0, 1), (2, 0, 1), (0, 2, 1)])
    pts = tri.lattice_points(1)
    assert len(pts) == 6 and all(p[2] == 1 for p in pts)
    assert tri.lattice_points(2)[-1] == (4, 0, 2)


def test_edges():
    assert len(SQUARE.edges()) == 4 and not SQUARE.long_edges()
    edges = TRIANGLE.edges()
    assert len(edges) == 3 and all(e.is_long for e in edges)
    long = lawrence_prism((3, 2)).long_edges()
    assert len(long) == 2
    tall = next(e for e in long if {e.start, e.end} == {(0, 0), (0, 3)})
    assert len(tall.points) == 4
    assert not lawrence_prism((1, 1, 1)).long_edges()


def test_apply_and_translate():
    assert SQUARE.apply(AffineMap.identity(2)) == SQUARE
    shear = AffineMap([[1, 1], [0, 1]], (0, 0))
    para = SQUARE.apply(shear)
    assert [para.count_lattice_points(k) for k in (1, 2)] == [4, 9]
    moved = SQUARE.translate((5, 7))
    assert [moved.count_lattice_points(k) for k in (1, 2, 3)] == [4, 9, 16]
    with pytest.raises(ValueError):
        AffineMap([[2, 0], [0, 1]], (0, 0))


def test_affine_map_algebra():
    rng = random.Random(3)
    for _ in range(20):
        a = AffineMap(random_unimodular(3, rng), tuple(rng.randint(-5, 5) for _ in range(3)))
        b = AffineMap(random_unimodular(3, rng), tuple(rng.randint(-5, 5) for _ in range(3)))
        x = tuple(rng.randint(-9, 9) for _ in range(3))
        assert a.compose(b)(x) == a(b(x))
        assert a.inverse()(a(x)) == x


def test_project():
    assert SQUARE.project([[1, 0]]).vertices == ((0,), (1,))
    c = cayley([LatticePolytope([(0,), (3,)]), LatticePolytope([(0,), (2,)]), LatticePolytope([(1,), (2,)])])
    image = c.project([[0, 1, 0], [0, 0, 1]])
    assert set(image.vertices) == {(0, 0), (1, 0), (0, 1)}
    prism = lawrence_prism((3, 2))
    assert prism.project([[1, 0]]).vertices == ((0,), (1,))
    with pytest.raises(ValueError):
        SQUARE.project([[2, 0]])
    assert is_lattice_surjection([[1, 2, 3]])
    assert not is_lattice_surjection([[2, 4]])


def test_segment_points():
    assert segment_points((0, 0), (3, 6)) == ((0, 0), (1, 2), (2, 4), (3, 6))
    assert segment_points((1,), (1,)) == ((1,),)


def test_ragged_generators_rejected():
    with pytest.raises(ValueError):
        LatticePolytope([(0, 0), (1,)])
    with pytest.raises(ValueError):
        LatticePolytope([])


def test_few_points_lie_in_a_proper_face():
    # any k <= n - d lattice points of a degree d polytope share a facet
    from latdeg.ehrhart import degree
    rng = random.Random(11)
    for p in [lawrence_prism((2, 1, 1)), exceptional_simplex(4), lawrence_prism((1, 1, 1, 1))]:
        n, d = p.dim, degree(p)
        pts = p.lattice_points(1)
        for _ in range(30):
            sample = rng.sample(pts, n - d)
            assert any(all(sum(a * b for a, b in zip(nv, x)) == c for x in sample) for nv, c in p.facets)


def test_lattice_points_lie_on_low_dimensional_faces():
    # every lattice point of a degree d polytope lies on a face of dimension <= d
    from latdeg.ehrhart import degree
    for p in [lawrence_prism((3, 2, 1)), exceptional_simplex(3), lawrence_prism((1, 1, 1))]:
        n, d = p.dim, degree(p)
        for x in p.lattice_points(1):
            active = [nv for nv, c in p.facets if sum(a * b for a, b in zip(nv, x)) == c]
            face_dim = n - (rank(active) if active else 0)
            assert face_dim <= d
