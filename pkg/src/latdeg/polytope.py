"""Lattice polytopes given by integer generators.

All counting happens in a *lattice frame*: a unimodular affine change of
coordinates that sends the affine hull lattice of the polytope onto
``Z^dim x {0}`` and makes the polytope compact (coordinates bounded by
roughly its normalized volume). Lower-dimensional polytopes are therefore
counted in their own affine lattice, never in the ambient one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Iterable, Iterator, Sequence

from .exactmath import (
    LinearConstraint,
    det,
    fm_feasible,
    hnf,
    identity,
    inverse_unimodular,
    matmul,
    matvec,
    rank,
    transpose,
)
from .hull import Facet, brute_force_facets

Point = tuple[int, ...]


@dataclass(frozen=True)
class AffineMap:
    """``x -> linear @ x + translation`` with ``|det(linear)| == 1``."""

    linear: tuple[tuple[int, ...], ...]
    translation: tuple[int, ...]

    def __post_init__(self):
        lin = tuple(tuple(int(x) for x in row) for row in self.linear)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", tuple(int(x) for x in self.translation))
        n = len(lin)
        if any(len(row) != n for row in lin) or len(self.translation) != n:
            raise ValueError("affine map must be square with matching translation")
        if abs(det(lin)) != 1:
            raise ValueError("affine map is not unimodular")

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls(identity(n), (0,) * n)

    @classmethod
    def translation_by(cls, t: Sequence[int]) -> "AffineMap":
        return cls(identity(len(t)), tuple(t))

    @property
    def dim(self) -> int:
        return len(self.translation)

    def __call__(self, x: Sequence[int]) -> Point:
        return tuple(a + b for a, b in zip(matvec(self.linear, x), self.translation))

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self o other``: apply ``other`` first."""
        lin = matmul(self.linear, other.linear)
        t = tuple(a + b for a, b in zip(matvec(self.linear, other.translation), self.translation))
        return AffineMap(lin, t)

    def inverse(self) -> "AffineMap":
        inv = inverse_unimodular(self.linear)
        return AffineMap(inv, tuple(-x for x in matvec(inv, self.translation)))

    def to_dict(self) -> dict:
        return {"linear": [list(r) for r in self.linear], "translation": list(self.translation)}


@dataclass(frozen=True)
class Edge:
    start: Point
    end: Point
    points: tuple[Point, ...]

    @property
    def is_long(self) -> bool:
        return len(self.points) > 2


class LatticePolytope:
    """Convex hull of finitely many lattice points.

    Generators may repeat or include non-vertices; they are deduplicated and
    sorted. Vertices, facets and the counting frame are computed on demand
    and cached (instances are immutable, so the caches are shareable).
    """

    def __init__(self, points: Iterable[Sequence[int]], ambient_dim: int | None = None, name: str | None = None):
        gens = sorted(set(tuple(int(x) for x in p) for p in points))
        if not gens:
            raise ValueError("a lattice polytope needs at least one generator")
        if ambient_dim is None:
            ambient_dim = len(gens[0])
        if any(len(p) != ambient_dim for p in gens):
            raise ValueError(f"all generators must have length {ambient_dim}")
        self.generators: tuple[Point, ...] = tuple(gens)
        self.ambient_dim = ambient_dim
        self.name = name

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<LatticePolytope{label} dim={self.dim} in Z^{self.ambient_dim}, {len(self.vertices)} vertices>"

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.vertices)))

    # ------------------------------------------------------------------ frame

    @cached_property
    def _hull_frame(self):
        # unimodular V with V (x - x0) in Z^d x 0 for x in the affine hull lattice
        x0 = self.generators[0]
        n = self.ambient_dim
        diffs = [[a - b for a, b in zip(p, x0)] for p in self.generators[1:]]
        if not diffs or n == 0:
            return x0, identity(n), 0
        h, u = hnf(transpose(diffs))
        d = sum(1 for row in h if any(row))
        return x0, u, d

    @property
    def dim(self) -> int:
        return self._hull_frame[2]

    def dimension(self) -> int:
        return self.dim

    @cached_property
    def _hull_coords(self) -> list[Point]:
        x0, u, d = self._hull_frame
        return [tuple(matvec(u[:d], [a - b for a, b in zip(p, x0)])) for p in self.generators]

    @cached_property
    def _vertex_flags(self) -> list[bool]:
        return _vertex_flags(self._hull_coords, self.dim)

    @cached_property
    def vertices(self) -> tuple[Point, ...]:
        """Generators that are not convex combinations of the others."""
        return tuple(g for g, flag in zip(self.generators, self._vertex_flags) if flag)

    @cached_property
    def frame(self) -> AffineMap:
        """Unimodular affine map sending the polytope into ``Z^dim x {0}``
        with small coordinates (the lattice frame used for counting)."""
        x0, u, d = self._hull_frame
        n = self.ambient_dim
        coords = [c for c, flag in zip(self._hull_coords, self._vertex_flags) if flag]
        if d == 0:
            return AffineMap(u, tuple(-x for x in matvec(u, x0)))
        simplex = _large_simplex(coords, d)
        w0 = coords[simplex[0]]
        edge_cols = [[a - b for a, b in zip(coords[i], w0)] for i in simplex[1:]]
        _, v2 = hnf(transpose(edge_cols))
        block = [list(row) + [0] * (n - d) for row in v2] + [[0] * d + [int(i == j) for j in range(n - d)]
                                                              for i in range(n - d)]
        linear = matmul(block, u)
        # translate so that the chosen simplex apex goes to the origin
        lift = list(w0) + [0] * (n - d)
        shift = [a + b for a, b in zip(matvec(linear, x0), matvec(block, lift))]
        return AffineMap(linear, tuple(-x for x in shift))

    @cached_property
    def _frame_inverse(self) -> AffineMap:
        return self.frame.inverse()

    @cached_property
    def reduced(self) -> "LatticePolytope":
        """Full-dimensional copy in ``Z^dim`` (vertices in the lattice frame)."""
        d = self.dim
        f = self.frame
        return _FramePolytope([f(v)[:d] for v in self.vertices], d)

    def restrict_to_affine_hull(self) -> tuple["LatticePolytope", AffineMap]:
        """Full-dimensional lattice-equivalent copy and the ambient map producing it.

        The map sends the polytope into ``Z^dim x {0}``; the copy keeps the
        first ``dim`` coordinates.
        """
        if self.dim == self.ambient_dim:
            raise ValueError("polytope is already full-dimensional")
        return self.reduced, self.frame

    # ----------------------------------------------------------------- facets

    @cached_property
    def _reduced_facets(self) -> list[Facet]:
        if self.dim == 0:
            return []
        return brute_force_facets(list(self.reduced.generators))

    @cached_property
    def facets(self) -> list[Facet]:
        """Facet inequalities ``normal . x >= offset`` with primitive inward normals.

        Only defined for full-dimensional polytopes.
        """
        if self.dim != self.ambient_dim:
            raise ValueError(f"facets need a full-dimensional polytope (dim {self.dim} < {self.ambient_dim})")
        lin, t = self.frame.linear, self.frame.translation
        out = []
        for normal, offset in self._reduced_facets:
            n2 = matvec(transpose(lin), normal)  # normal . (L x + t) >= offset
            out.append((tuple(n2), offset - sum(a * b for a, b in zip(normal, t))))
        return sorted(out)

    def contains(self, x: Sequence[int]) -> bool:
        y = self.frame(x)
        d = self.dim
        if any(y[d:]):
            return False
        y = y[:d]
        return all(sum(a * b for a, b in zip(n, y)) >= c for n, c in self._reduced_facets)

    # --------------------------------------------------------------- counting

    @cached_property
    def _levels(self) -> list[list[Facet]]:
        # facets of the projections of the reduced polytope onto its first j coordinates
        d = self.dim
        verts = self.reduced.generators
        levels = []
        for j in range(1, d + 1):
            proj = sorted(set(v[:j] for v in verts))
            levels.append([(n, c) for n, c in brute_force_facets(proj) if n[j - 1] != 0])
        return levels

    def _frame_points(self, k: int, interior: bool = False) -> Iterator[Point]:
        d = self.dim
        if k < 0:
            raise ValueError("dilation factor must be non-negative")
        if k == 0:
            if not interior:
                yield (0,) * d
            return
        if d == 0:
            yield ()
            return
        levels = self._levels
        prefix = [0] * d

        def rec(j):
            lo = hi = None
            for normal, offset in levels[j]:
                r = k * offset - sum(a * b for a, b in zip(normal[:j], prefix[:j]))
                a = normal[j]
                if a > 0:
                    b = -((-r) // a)  # ceil(r / a)
                    if interior and b * a == r:
                        b += 1
                    lo = b if lo is None else max(lo, b)
                else:
                    b = r // a
                    if interior and b * a == r:
                        b -= 1
                    hi = b if hi is None else min(hi, b)
            for v in range(lo, hi + 1):
                prefix[j] = v
                if j == d - 1:
                    yield tuple(prefix)
                else:
                    yield from rec(j + 1)

        yield from rec(0)

    @cached_property
    def _counts(self) -> dict:
        return {}

    def count_lattice_points(self, k: int = 1) -> int:
        key = (k, False)
        if key not in self._counts:
            self._counts[key] = sum(1 for _ in self._frame_points(k))
        return self._counts[key]

    def count_interior_lattice_points(self, k: int = 1) -> int:
        key = (k, True)
        if key not in self._counts:
            self._counts[key] = sum(1 for _ in self._frame_points(k, interior=True))
        return self._counts[key]

    def _to_ambient(self, k: int, z: Sequence[int]) -> Point:
        inv = self._frame_inverse
        full = list(z) + [0] * (self.ambient_dim - self.dim)
        # kP = k * P, so the frame of kP is the frame of P with translation scaled by k
        lin = matvec(inv.linear, full)
        return tuple(a + k * b for a, b in zip(lin, inv.translation))

    def lattice_points(self, k: int = 1) -> list[Point]:
        """Lattice points of ``k * P`` in ambient coordinates, sorted."""
        return sorted(self._to_ambient(k, z) for z in self._frame_points(k))

    def interior_lattice_points(self, k: int = 1) -> list[Point]:
        """Lattice points in the relative interior of ``k * P``, sorted."""
        return sorted(self._to_ambient(k, z) for z in self._frame_points(k, interior=True))

    # ------------------------------------------------------------------ edges

    def edges(self) -> list[Edge]:
        """Edges: vertex pairs whose common facets have rank ``dim - 1``."""
        d = self.dim
        if d == 0:
            return []
        f = self.frame
        facets = self._reduced_facets
        verts = list(self.vertices)
        coords = [f(v)[:d] for v in verts]
        active = [[n for n, c in facets if sum(a * b for a, b in zip(n, y)) == c] for y in coords]
        out = []
        for i, j in combinations(range(len(verts)), 2):
            common = [n for n in active[i] if n in active[j]]
            if (rank(common) if common else 0) == d - 1:
                v, w = verts[i], verts[j]
                out.append(Edge(v, w, segment_points(v, w)))
        return out

    def long_edges(self) -> list[Edge]:
        return [e for e in self.edges() if e.is_long]

    # ------------------------------------------------------------- transforms

    def apply(self, m: AffineMap) -> "LatticePolytope":
        if m.dim != self.ambient_dim:
            raise ValueError("map and polytope live in different lattices")
        return LatticePolytope([m(v) for v in self.generators], self.ambient_dim)

    def translate(self, t: Sequence[int]) -> "LatticePolytope":
        return self.apply(AffineMap.translation_by(t))

    def project(self, surjection: Sequence[Sequence[int]]) -> "LatticePolytope":
        """Image under a surjective lattice homomorphism ``Z^n -> Z^r``."""
        r = len(surjection)
        if any(len(row) != self.ambient_dim for row in surjection):
            raise ValueError("surjection has the wrong number of columns")
        if not is_lattice_surjection(surjection):
            raise ValueError("map is not a surjective lattice homomorphism")
        return LatticePolytope([tuple(matvec(surjection, v)) for v in self.vertices], r)


class _FramePolytope(LatticePolytope):
    """Full-dimensional polytope already in a compact frame (identity frame)."""

    def __init__(self, points, dim):
        super().__init__(points, dim)
        self.__dict__["_hull_frame"] = (self.generators[0], identity(dim), dim)
        self.__dict__["_vertex_flags"] = [True] * len(self.generators)

    @cached_property
    def frame(self) -> AffineMap:
        return AffineMap.identity(self.ambient_dim)


def segment_points(v: Sequence[int], w: Sequence[int]) -> tuple[Point, ...]:
    diff = [b - a for a, b in zip(v, w)]
    g = 0
    for x in diff:
        g = gcd(g, x)
    if g == 0:
        return (tuple(v),)
    step = [x // g for x in diff]
    return tuple(tuple(a + i * s for a, s in zip(v, step)) for i in range(g + 1))


def is_lattice_surjection(m: Sequence[Sequence[int]]) -> bool:
    r = len(m)
    if r == 0:
        return True
    h, _ = hnf(transpose(m))
    top = h[:r]
    return all(top[i][i] == 1 for i in range(r)) and rank(m) == r


def _vertex_flags(coords: list[Point], d: int) -> list[bool]:
    m = len(coords)
    if m == 1:
        return [True]
    flags: list[bool | None] = [None] * m
    # lexicographic extremes for signed coordinate orders are vertices
    for i in range(d):
        for s in (1, -1):
            best = min(range(m), key=lambda j: (s * coords[j][i],) + coords[j])
            flags[best] = True
    # points strictly inside a segment between two others are not
    for j in range(m):
        if flags[j] is not None:
            continue
        p = coords[j]
        for a, b in combinations(range(m), 2):
            if a == j or b == j:
                continue
            if _strictly_between(p, coords[a], coords[b]):
                flags[j] = False
                break
    for j in range(m):
        if flags[j] is None:
            p = coords[j]
            cs = [LinearConstraint(tuple(a - b for a, b in zip(q, p)), 0, ">")
                  for i, q in enumerate(coords) if i != j]
            flags[j] = fm_feasible(cs)
    return [bool(f) for f in flags]


def _strictly_between(p, a, b) -> bool:
    u = [x - y for x, y in zip(b, a)]
    w = [x - y for x, y in zip(p, a)]
    # w = t u with 0 < t < 1
    k = next(i for i, x in enumerate(u) if x != 0)
    t = Fraction(w[k], u[k])
    if not 0 < t < 1:
        return False
    return all(wi == t * ui for wi, ui in zip(w, u))


def _large_simplex(coords: list[Point], d: int) -> list[int]:
    """Indices of ``d + 1`` affinely independent points with locally maximal volume."""
    chosen = [0]
    for i in range(1, len(coords)):
        trial = chosen + [i]
        diffs = [[a - b for a, b in zip(coords[j], coords[trial[0]])] for j in trial[1:]]
        if rank(diffs) == len(trial) - 1:
            chosen = trial
            if len(chosen) == d + 1:
                break

    def vol(idx):
        base = coords[idx[0]]
        return abs(det([[a - b for a, b in zip(coords[j], base)] for j in idx[1:]]))

    best = vol(chosen)
    improved = True
    while improved:
        improved = False
        for pos in range(d + 1):
            for i in range(len(coords)):
                if i in chosen:
                    continue
                trial = chosen[:pos] + [i] + chosen[pos + 1:]
                v = vol(trial)
                if v > best:
                    chosen, best, improved = trial, v, True
    return chosen
