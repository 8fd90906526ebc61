from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from latdeg.exactmath import (DimensionError, LinearConstraint, det, fm_feasible, hnf, identity,
                              integer_kernel, inverse_unimodular, matmul, matvec, primitive, rank,
                              solve_rational, transpose)

small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_det_examples():
    assert det(identity(3)) == 1
    assert det([[2, 0], [0, 2]]) == 4
    # edge matrix of conv((0,0),(2,0),(0,2)) from the origin
    assert det([[2, 0], [0, 2]]) == 4
    assert det([]) == 1


def test_det_rejects_non_square():
    with pytest.raises(DimensionError):
        det([[1, 2, 3], [4, 5, 6]])


@given(st.integers(1, 5).flatmap(square))
def test_det_matches_sympy(m):
    assert det(m) == sympy.Matrix(m).det()


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n))))
def test_det_is_multiplicative(pair):
    a, b = pair
    assert det(matmul(a, b)) == det(a) * det(b)


def test_rank_examples():
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank(identity(4)) == 4
    # a thin parallelogram: (0,0), (1,0), (3,1), (4,1)
    pts = [(0, 0), (1, 0), (3, 1), (4, 1)]
    assert rank([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]) == 2


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy.Matrix(m).rank()


def test_hnf_examples():
    h, u = hnf(identity(3))
    assert h == identity(3) and u == identity(3)
    h, u = hnf([[2, 4]])
    assert h == [[2, 4]] and u == [[1]]
    assert primitive([2, 4]) == (1, 2)
    h, u = hnf([[0, 1], [1, 0]])
    assert h == [[1, 0], [0, 1]]
    assert abs(det(u)) == 1
    assert matmul(u, [[0, 1], [1, 0]]) == h


@given(matrices(5, 4))
def test_hnf_properties(m):
    h, u = hnf(m)
    assert abs(det(u)) == 1
    assert matmul(u, m) == h
    # echelon shape with positive pivots and reduced entries above them
    last = -1
    zero_seen = False
    for i, row in enumerate(h):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            zero_seen = True
            continue
        assert not zero_seen
        p = nz[0]
        assert p > last and row[p] > 0
        for k in range(i):
            assert 0 <= h[k][p] < row[p]
        last = p
    assert sum(1 for row in h if any(row)) == rank(m)


@given(matrices(3, 5))
def test_integer_kernel(m):
    ker = integer_kernel(m, len(m[0]))
    assert len(ker) == len(m[0]) - rank(m)
    for v in ker:
        assert all(x == 0 for x in matvec(m, v))
    # saturated: the kernel basis extends to a unimodular matrix
    if ker:
        h, _ = hnf(transpose(ker))
        assert all(h[i][i] == 1 for i in range(len(ker)))


@given(st.integers(1, 4).flatmap(square))
def test_inverse_unimodular(m):
    h, u = hnf(m)
    inv = inverse_unimodular(u)
    assert matmul(u, inv) == identity(len(u))


def test_solve_rational():
    assert solve_rational(identity(3), [1, 2, 3]) == [1, 2, 3]
    assert solve_rational([[1, 1], [1, 1]], [0, 1]) is None
    # affine relation of the unit square's corners in lex order
    pts = [(0, 0), (0, 1), (1, 0), (1, 1)]
    rows = [list(c) for c in zip(*pts)] + [[1] * 4]
    ker = integer_kernel(rows, 4)
    assert len(ker) == 1 and primitive(ker[0]) in {(1, -1, -1, 1), (-1, 1, 1, -1)}


@given(matrices(4, 4), st.lists(small, min_size=4, max_size=4))
def test_solve_rational_solutions_are_solutions(m, x):
    x = x[: len(m[0])]
    b = matvec(m, x)
    sol = solve_rational(m, b)
    assert sol is not None
    assert matvec(m, sol) == b


def lc(coeffs, offset, rel):
    return LinearConstraint(tuple(coeffs), Fraction(offset), rel)


def test_fm_examples():
    assert fm_feasible([lc([1], 0, ">"), lc([-1], 1, ">")])
    assert not fm_feasible([lc([1], 0, ">"), lc([-1], 0, ">")])
    assert fm_feasible([lc([1], 0, ">="), lc([-1], 0, ">=")])
    # open unit triangles on both sides of the diagonal x = y of the square
    lower = [lc([0, 1], 0, ">"), lc([1, -1], 0, ">"), lc([-1, 0], 1, ">")]
    upper = [lc([1, 0], 0, ">"), lc([-1, 1], 0, ">"), lc([0, -1], 1, ">")]
    assert fm_feasible(lower) and fm_feasible(upper)
    assert not fm_feasible(lower + upper)


def test_fm_equalities_and_constants():
    assert fm_feasible([lc([1, 1], -1, "="), lc([1, -1], 0, "="), lc([1, 0], 0, ">")])
    assert not fm_feasible([lc([1, 1], -1, "="), lc([1, 1], -2, "=")])
    assert fm_feasible([lc([], 1, ">")])
    assert not fm_feasible([lc([], 0, ">")])
    with pytest.raises(ValueError):
        fm_feasible([lc([1] * 9, 0, ">=")])


constraint = st.tuples(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.integers(-4, 4),
                       st.sampled_from([">=", ">", "="]))


@settings(max_examples=150, deadline=None)
@given(st.lists(constraint, min_size=1, max_size=5))
def test_fm_agrees_with_grid_sampling_2d(rows):
    cs = [lc(a, b, r) for a, b, r in rows]
    grid = [Fraction(i, 8) for i in range(-40, 41)]
    hit = any(all(c.holds(x) for c in cs) for x in product(grid, repeat=2))
    if hit:
        assert fm_feasible(cs)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.lists(st.integers(-2, 2), min_size=3, max_size=3), st.integers(-3, 3),
                          st.sampled_from([">=", ">"])), min_size=1, max_size=4))
def test_fm_agrees_with_grid_sampling_3d(rows):
    cs = [lc(a, b, r) for a, b, r in rows]
    grid = [Fraction(i, 8) for i in range(-16, 17)]
    hit = any(all(c.holds(x) for c in cs) for x in product(grid, repeat=3))
    if hit:
        assert fm_feasible(cs)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(0, 3)),
                min_size=1, max_size=8))
def test_fm_finds_planted_points(x0, rows):
    # every row is satisfied at x0 by construction (strictly when slack > 0)
    cs = []
    for a, slack in rows:
        value = sum(p * q for p, q in zip(a, x0))
        cs.append(lc(a, slack - value, ">" if slack else ">="))
    assert fm_feasible(cs)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(any), st.integers(-3, 3),
       st.lists(constraint, max_size=3))
def test_fm_detects_contradictions(a, b, extra):
    # a.x + b > 0 and -a.x - b >= 0 cannot both hold
    cs = [lc(a, b, ">"), lc([-x for x in a], -b, ">=")]
    cs += [lc(list(c) + [0], o, r) for c, o, r in extra]
    assert not fm_feasible(cs)
