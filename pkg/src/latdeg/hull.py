"""Exact convex hulls of integer point sets.

Two independent routes are provided: :func:`brute_force_facets` enumerates
hyperplanes through affinely independent subsets (fine for a handful of
vertices), and :func:`double_description` runs the double description method
on the homogenised cone of valid inequalities (used for point sets of a few
hundred points such as GKZ vectors).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .exactmath import det, hnf, primitive, rank, transpose

MAX_HULL_POINTS = 30
MAX_HULL_DIM = 8

Facet = tuple[tuple[int, ...], int]  # normal . x >= offset


class HullCapError(RuntimeError):
    """Raised when a brute-force hull would exceed the supported size."""


def hyperplane_normal(points: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Integer normal of the affine hyperplane through ``d`` points of Z^d.

    Computed as the generalised cross product of the difference vectors; the
    zero vector is returned when the points are affinely dependent.
    """
    base = points[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    d = len(base)
    if d == 1:
        return (1,)
    normal = []
    for i in range(d):
        minor = [row[:i] + row[i + 1:] for row in diffs]
        normal.append((-1) ** i * det(minor))
    return primitive(normal)


def brute_force_facets(points: Sequence[Sequence[int]]) -> list[Facet]:
    """Facets of a full-dimensional ``conv(points)`` as inward inequalities.

    Every hyperplane spanned by ``d`` affinely independent points with all
    points on one closed side is a facet hyperplane; normals are primitive.
    """
    pts = sorted(set(tuple(p) for p in points))
    if not pts:
        raise ValueError("empty point set")
    d = len(pts[0])
    if len(pts) > MAX_HULL_POINTS or d > MAX_HULL_DIM:
        raise HullCapError(f"brute-force hull limited to {MAX_HULL_POINTS} points in dimension "
                           f"<= {MAX_HULL_DIM}; got {len(pts)} points in dimension {d}")
    if d == 0:
        return []
    if d == 1:
        lo = min(p[0] for p in pts)
        hi = max(p[0] for p in pts)
        if lo == hi:
            raise ValueError("point set is not full-dimensional")
        return [((1,), lo), ((-1,), -hi)]
    found = {}
    for subset in combinations(pts, d):
        normal = hyperplane_normal(subset)
        if not any(normal):
            continue
        values = [sum(a * b for a, b in zip(normal, p)) for p in pts]
        c = values[pts.index(subset[0])]
        if all(v == c for v in values):
            continue
        if all(v >= c for v in values):
            found[(normal, c)] = None
        elif all(v <= c for v in values):
            found[(tuple(-a for a in normal), -c)] = None
    if not found:
        raise ValueError("point set is not full-dimensional")
    return sorted(found)


@dataclass
class Hull:
    """Combinatorial data of ``conv(points)`` in its own affine lattice frame.

    ``points`` are the (deduplicated) inputs, ``coords`` their integer
    coordinates in a lattice basis of the affine span, ``facets`` inward
    inequalities on ``coords`` and ``incidence[f]`` the set of point indices
    on facet ``f``.
    """

    points: list[tuple[int, ...]]
    coords: list[tuple[int, ...]]
    dim: int
    facets: list[Facet]
    incidence: list[frozenset]

    def vertex_indices(self) -> list[int]:
        if self.dim == 0:
            return [0]
        out = []
        for i in range(len(self.points)):
            normals = [self.facets[f][0] for f in range(len(self.facets)) if i in self.incidence[f]]
            if len(normals) >= self.dim and rank(normals) == self.dim:
                out.append(i)
        return out

    def edges(self) -> list[tuple[int, int]]:
        """Vertex pairs spanning an edge (common facets of rank ``dim - 1``)."""
        verts = self.vertex_indices()
        if self.dim == 0:
            return []
        on = {i: {f for f in range(len(self.facets)) if i in self.incidence[f]} for i in verts}
        out = []
        for a, b in combinations(verts, 2):
            common = on[a] & on[b]
            if len(common) < self.dim - 1:
                continue
            normals = [self.facets[f][0] for f in common]
            if (rank(normals) if normals else 0) == self.dim - 1:
                out.append((a, b))
        return out


def affine_coordinates(points: Sequence[Sequence[int]]) -> tuple[list[tuple[int, ...]], int]:
    """Integer coordinates of ``points`` in a lattice basis of their affine span."""
    base = points[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in points]
    if not diffs[0]:
        return [()] * len(points), 0
    h, u = hnf(transpose(diffs))
    d = sum(1 for row in h if any(row))
    coords = [tuple(row[:d]) for row in transpose(h)] if d else [()] * len(points)
    return coords, d


def double_description(points: Sequence[Sequence[int]]) -> Hull:
    """Convex hull via the double description method with exact integers."""
    pts = sorted(set(tuple(p) for p in points))
    if not pts:
        raise ValueError("empty point set")
    coords, d = affine_coordinates(pts)
    if d == 0:
        return Hull(pts, coords, 0, [], [])
    rows = [tuple(c) + (-1,) for c in coords]  # row . (a, b) = a.x - b >= 0
    n = len(rows)

    # initial basis of d+1 independent rows
    basis = []
    for i in range(n):
        if rank([rows[j] for j in basis] + [rows[i]]) > len(basis):
            basis.append(i)
            if len(basis) == d + 1:
                break
    square = [rows[i] for i in basis]
    full = det(square)
    sign = 1 if full > 0 else -1
    adj_cols = []
    for k in range(d + 1):
        # column k of adj(square): cofactors C[k][*]
        col = []
        for i in range(d + 1):
            minor = [r[:i] + r[i + 1:] for j, r in enumerate(square) if j != k]
            col.append((-1) ** (i + k) * det(minor))
        adj_cols.append(primitive([sign * x for x in col]))

    processed = list(basis)
    order = [i for i in range(n) if i not in set(basis)]

    def dot(r, y):
        return sum(a * b for a, b in zip(r, y))

    rays = []
    for y in adj_cols:
        tight = 0
        for i in processed:
            if dot(rows[i], y) == 0:
                tight |= 1 << i
        rays.append((y, tight))

    need = d - 1  # common tight rows for adjacency in a (d+1)-dim cone
    for i in order:
        row = rows[i]
        bit = 1 << i
        pos, neg, zero = [], [], []
        for y, t in rays:
            s = dot(row, y)
            if s > 0:
                pos.append((y, t, s))
            elif s < 0:
                neg.append((y, t, s))
            else:
                zero.append((y, t | bit))
        if not neg:
            rays = [(y, t) for y, t, _ in pos] + zero
            processed.append(i)
            continue
        tights = [t for _, t in rays]
        new = []
        for yp, tp, sp in pos:
            for yn, tn, sn in neg:
                common = tp & tn
                if bin(common).count("1") < need:
                    continue
                if any((t & common) == common and t != tp and t != tn for t in tights):
                    continue
                y = primitive([sp * a - sn * b for a, b in zip(yn, yp)])
                new.append((y, common | bit))
        rays = [(y, t) for y, t, _ in pos] + zero + new
        processed.append(i)

    facets = []
    incidence = []
    for y, t in sorted(rays):
        normal, offset = y[:-1], y[-1]
        facets.append((tuple(normal), offset))
        incidence.append(frozenset(j for j in range(n) if t >> j & 1))
    return Hull(pts, coords, d, facets, incidence)
