"""Constructive classification of lattice polytopes of degree at most one.

Every such polytope is a basic simplex, an exceptional simplex or a Lawrence
prism; :func:`classify` finds which, and returns a unimodular affine
*witness* carrying the polytope onto the canonical representative built by
:mod:`latdeg.construct`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import gcd
from typing import Optional

from .construct import basic_simplex, cayley, exceptional_simplex, lawrence_prism
from .ehrhart import InternalConsistencyError, hstar
from .exactmath import det, hnf, inverse_unimodular, matvec, primitive, transpose
from .polytope import AffineMap, Edge, LatticePolytope, Point


class Tag(str, Enum):
    BASIC_SIMPLEX = "BasicSimplex"
    LAWRENCE_PRISM = "LawrencePrism"
    EXCEPTIONAL = "Exceptional"
    NOT_DEGREE_LE_ONE = "NotDegreeLeOne"


class ClassificationError(RuntimeError):
    """A degree <= 1 polytope matched no family. Cannot happen unless there is a bug."""


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class Classification:
    tag: Tag
    heights: Optional[tuple[int, ...]] = None
    n: Optional[int] = None
    witness: Optional[AffineMap] = None

    def canonical(self, ambient_dim: int) -> Optional[LatticePolytope]:
        """Canonical representative, padded with zero coordinates up to ``ambient_dim``."""
        if self.tag is Tag.BASIC_SIMPLEX:
            base = basic_simplex(self.n)
        elif self.tag is Tag.LAWRENCE_PRISM:
            base = lawrence_prism(self.heights)
        elif self.tag is Tag.EXCEPTIONAL:
            base = exceptional_simplex(self.n)
        else:
            return None
        pad = (0,) * (ambient_dim - base.ambient_dim)
        return LatticePolytope([v + pad for v in base.vertices], ambient_dim)

    def to_dict(self) -> dict:
        out = {"tag": self.tag.value}
        if self.heights is not None:
            out["heights"] = list(self.heights)
        if self.n is not None:
            out["n"] = self.n
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


def _affine_basis_map(origin: Point, columns: list[list[int]]) -> Optional[AffineMap]:
    """Map sending ``origin`` to 0 and ``origin + columns[i]`` to ``e_i``; None if not unimodular."""
    m = transpose(columns)
    if abs(det(m)) != 1:
        return None
    inv = inverse_unimodular(m)
    return AffineMap(inv, tuple(-x for x in matvec(inv, origin)))


def _pad(m: AffineMap, n: int) -> AffineMap:
    d = m.dim
    lin = [list(row) + [0] * (n - d) for row in m.linear]
    lin += [[0] * d + [int(i == j) for j in range(n - d)] for i in range(n - d)]
    return AffineMap(lin, tuple(m.translation) + (0,) * (n - d))


def _midpoint(a: Point, b: Point) -> Point:
    return tuple((x + y) // 2 for x, y in zip(a, b))


def is_narrow(p: LatticePolytope) -> bool:
    """True iff the only lattice points of a degree <= 1 polytope are its vertices."""
    if hstar(p).degree > 1:
        raise DomainError("narrowness is only defined for polytopes of degree <= 1")
    points = p.lattice_points(1)
    verts = p.vertices
    only_vertices = len(points) == len(verts)
    no_point_between_points = all(_lattice_length(a, b) == 1 for a, b in combinations(points, 2))
    no_point_between_vertices = all(_lattice_length(a, b) == 1 for a, b in combinations(verts, 2))
    if not only_vertices == no_point_between_points == no_point_between_vertices:
        raise InternalConsistencyError("narrowness characterizations disagree")
    return only_vertices


def _lattice_length(a: Point, b: Point) -> int:
    g = 0
    for x, y in zip(a, b):
        g = gcd(g, x - y)
    return g


def long_edges(p: LatticePolytope) -> list[Edge]:
    return p.long_edges()


def classify(p: LatticePolytope) -> Classification:
    """Decide whether ``p`` has degree <= 1 and, if so, which family it is in."""
    h = hstar(p)
    if h.degree >= 2:
        return Classification(Tag.NOT_DEGREE_LE_ONE)
    n = p.dim
    q = p.reduced  # full-dimensional compact copy in Z^n
    to_q = p.frame
    if h.volume == 1:
        local = _basic_witness(q)
        tag = Classification(Tag.BASIC_SIMPLEX, n=n)
    else:
        local = None
        if n >= 2:
            local = _exceptional_witness(q)
            tag = Classification(Tag.EXCEPTIONAL, n=n)
        if local is None:
            found = _prism_witness(q)
            if found is None:
                raise ClassificationError(f"degree <= 1 polytope {p!r} is neither exceptional nor a Lawrence prism")
            heights, local = found
            tag = Classification(Tag.LAWRENCE_PRISM, heights=heights)
    witness = _pad(local, p.ambient_dim).compose(to_q)
    result = Classification(tag.tag, tag.heights, tag.n, witness)
    if not _witness_ok(p, result):
        raise ClassificationError("witness map does not reach the canonical polytope")
    return result


def _witness_ok(p: LatticePolytope, c: Classification) -> bool:
    target = c.canonical(p.ambient_dim)
    image = {c.witness(v) for v in p.vertices}
    return image == set(target.vertices)


def _basic_witness(q: LatticePolytope) -> AffineMap:
    verts = list(q.vertices)
    origin = verts[0]
    cols = [[a - b for a, b in zip(v, origin)] for v in verts[1:]]
    m = _affine_basis_map(origin, cols)
    if m is None:
        raise InternalConsistencyError("volume one simplex without an affine lattice basis")
    return m


def _exceptional_witness(q: LatticePolytope) -> Optional[AffineMap]:
    n = q.dim
    verts = list(q.vertices)
    if len(verts) != n + 1 or q.count_lattice_points(1) != n + 4:
        return None
    longs = q.long_edges()
    if len(longs) != 3 or any(len(e.points) != 3 for e in longs):
        return None
    corners = sorted({e.start for e in longs} | {e.end for e in longs})
    if len(corners) != 3:
        return None
    a, b, c = corners
    rest = [v for v in verts if v not in corners]
    cols = [[x - y for x, y in zip(_midpoint(a, b), a)], [x - y for x, y in zip(_midpoint(a, c), a)]]
    cols += [[x - y for x, y in zip(v, a)] for v in rest]
    return _affine_basis_map(a, cols)


def _direction_candidates(points: list[Point]) -> list[tuple[int, ...]]:
    dirs = set()
    for a, b in combinations(points, 2):
        u = primitive([y - x for x, y in zip(a, b)])
        first = next(x for x in u if x != 0)
        if first < 0:
            u = tuple(-x for x in u)
        dirs.add(u)
    return sorted(dirs)


def _prism_witness(q: LatticePolytope) -> Optional[tuple[tuple[int, ...], AffineMap]]:
    n = q.dim
    points = q.lattice_points(1)
    vertex_set = set(q.vertices)
    for u in _direction_candidates(points):
        _, v = hnf([[x] for x in u])  # v @ u = e_1
        fibers: dict[tuple, list[int]] = {}
        for x in points:
            y = matvec(v, x)
            fibers.setdefault(tuple(y[1:]), []).append(y[0])
        if len(fibers) != n:
            continue
        images = sorted(fibers)
        base = images[0]
        if n > 1 and abs(det([[a - b for a, b in zip(y, base)] for y in images[1:]])) != 1:
            continue
        inv = inverse_unimodular(v)
        ends = {}
        ok = True
        for y, ts in fibers.items():
            lo, hi = min(ts), max(ts)
            if len(ts) != hi - lo + 1:
                ok = False
                break
            ends[y] = (lo, hi)
        if not ok:
            continue
        endpoints = set()
        for y, (lo, hi) in ends.items():
            endpoints.add(tuple(matvec(inv, (lo,) + y)))
            endpoints.add(tuple(matvec(inv, (hi,) + y)))
        if not vertex_set <= endpoints:
            continue
        order = sorted(images, key=lambda y: (-(ends[y][1] - ends[y][0]), y))
        heights = tuple(ends[y][1] - ends[y][0] for y in order)
        bottoms = [tuple(matvec(inv, (ends[y][0],) + y)) for y in order]
        origin = bottoms[0]
        cols = [[a - b for a, b in zip(w, origin)] for w in bottoms[1:]] + [list(u)]
        m = _affine_basis_map(origin, cols)
        if m is None:
            continue
        return heights, m
    return None


def verify_main_theorem(p: LatticePolytope) -> bool:
    """Degree <= 1 iff the classifier finds a family, and the witness reaches it."""
    try:
        c = classify(p)
    except ClassificationError:
        return False
    low_degree = hstar(p).degree <= 1
    if low_degree != (c.tag is not Tag.NOT_DEGREE_LE_ONE):
        return False
    if c.witness is None:
        return True
    return _witness_ok(p, c)


def cayley_layers(p: LatticePolytope, c: Optional[Classification] = None) -> Optional[tuple[LatticePolytope, LatticePolytope, AffineMap]]:
    """Exhibit a degree-one polytope as a Cayley polytope ``D0 * D1`` of lower-dimensional pieces.

    Returns ``(D0, D1, m)`` with ``m`` unimodular and ``m(p) == cayley([D0, D1])``,
    or ``None`` when ``p`` is not of degree <= 1 or cannot be split (dimension < 2, or the exceptional triangle).
    """
    c = c or classify(p)
    n = p.dim
    if c.witness is None or n < 2 or p.dim != p.ambient_dim:
        return None
    if c.tag is Tag.EXCEPTIONAL:
        if n < 3:
            return None  # the exceptional triangle is not a Cayley polytope
        split = AffineMap.identity(n)  # last coordinate separates the apex e_n
    else:
        heights = c.heights if c.tag is Tag.LAWRENCE_PRISM else (1,) + (0,) * (n - 1)
        if c.tag is Tag.BASIC_SIMPLEX:
            # basic simplex as the prism with heights (1, 0, ..., 0)
            c = Classification(Tag.LAWRENCE_PRISM, heights, witness=_prism_from_basic(p, c))
        # new coordinates (x_2, ..., x_n, x_1 + ... + x_{n-1})
        rows = [[int(j == i) for j in range(n)] for i in range(1, n)]
        rows.append([1] * (n - 1) + [0])
        split = AffineMap(rows, (0,) * n)
    m = split.compose(c.witness)
    image = [m(v) for v in p.vertices]
    layer0 = LatticePolytope([v[:-1] for v in image if v[-1] == 0], n - 1)
    layer1 = LatticePolytope([v[:-1] for v in image if v[-1] == 1], n - 1)
    if len(layer0.generators) + len(layer1.generators) != len(image):
        raise InternalConsistencyError("vertices outside the two Cayley layers")
    return layer0, layer1, m


def _prism_from_basic(p: LatticePolytope, c: Classification) -> AffineMap:
    # basic_simplex(n) and lawrence_prism((1, 0, ..., 0)) differ by a permutation of e_1..e_n
    n = p.dim
    perm = [[0] * n for _ in range(n)]
    perm[n - 1][0] = 1
    for i in range(1, n):
        perm[i - 1][i] = 1
    # e_1 -> e_n, e_{i+1} -> e_i
    return AffineMap(perm, (0,) * n).compose(c.witness)


def cayley_check(p: LatticePolytope) -> bool:
    """True iff :func:`cayley_layers` yields pieces of smaller dimension whose
    Cayley polytope is the unimodular image of ``p``."""
    found = cayley_layers(p)
    if found is None:
        return False
    d0, d1, m = found
    n = p.dim
    if d0.dim >= n or d1.dim >= n:
        return False
    return set(cayley([d0, d1]).vertices) == {m(v) for v in p.vertices}
