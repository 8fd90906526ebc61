"""Lattice triangulations of small point configurations.

Triangulations here may use any lattice point of the polytope as a vertex.
Besides exhaustive enumeration this module provides circuits and flips, GKZ
vectors and a combinatorial report on the secondary polytope (the hull of
all GKZ vectors).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import Iterator, Optional, Sequence

from .ehrhart import normalized_volume
from .exactmath import LinearConstraint, det, fm_feasible, integer_kernel, primitive, rank
from .construct import lawrence_prism
from .hull import double_description, hyperplane_normal
from .polytope import LatticePolytope, Point

MAX_ENUM_POINTS = 9


class CapExceeded(RuntimeError):
    """The configuration is too large for exhaustive enumeration."""


def _bits(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Circuit:
    """Minimal affine dependence ``sum c_i x_i = sum d_j x_j`` with ``sum c_i = sum d_j``.

    Indices refer to the list the circuit was computed from. The side holding
    the smallest index is the positive one.
    """

    positive: tuple[int, ...]
    pos_coeffs: tuple[int, ...]
    negative: tuple[int, ...]
    neg_coeffs: tuple[int, ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.positive + self.negative))

    def reversed(self) -> "Circuit":
        return Circuit(self.negative, self.neg_coeffs, self.positive, self.pos_coeffs)

    def half_triangulation(self, positive: bool = True) -> list[frozenset]:
        """One of the two triangulations of ``conv(support)``: drop one point of a side."""
        side = self.positive if positive else self.negative
        full = frozenset(self.support)
        return [full - {z} for z in side]


def circuit(points: Sequence[Sequence[int]]) -> Optional[Circuit]:
    """The unique circuit supported on ``points``, or None if they are affinely independent.

    Raises ValueError if the affine dependences form more than a line (so
    there is no unique circuit).
    """
    pts = [tuple(p) for p in points]
    if not pts:
        return None
    rows = [list(col) for col in zip(*pts)] + [[1] * len(pts)]
    kernel = integer_kernel(rows, len(pts))
    if not kernel:
        return None
    if len(kernel) > 1:
        raise ValueError("points carry more than one independent affine dependence")
    lam = primitive(kernel[0])
    first = next(i for i, x in enumerate(lam) if x)
    if lam[first] < 0:
        lam = tuple(-x for x in lam)
    pos = tuple(i for i, x in enumerate(lam) if x > 0)
    neg = tuple(i for i, x in enumerate(lam) if x < 0)
    return Circuit(pos, tuple(lam[i] for i in pos), neg, tuple(-lam[i] for i in neg))


def is_parallelogram(c: Circuit) -> bool:
    return (len(c.positive) == len(c.negative) == 2
            and set(c.pos_coeffs) == {1} and set(c.neg_coeffs) == {1})


@dataclass(frozen=True, order=True)
class Triangulation:
    """Maximal simplices as sorted index tuples, themselves sorted."""

    simplices: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, simplices) -> "Triangulation":
        return cls(tuple(sorted(tuple(sorted(s)) for s in simplices)))

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def to_dict(self) -> dict:
        return {"simplices": [list(s) for s in self.simplices]}


class PointConfig:
    """The lattice points of a polytope, in lexicographic order, with lattice-frame coordinates."""

    def __init__(self, polytope: LatticePolytope):
        self.polytope = polytope
        self.points: list[Point] = polytope.lattice_points(1)
        self.dim = polytope.dim
        f = polytope.frame
        self.coords: list[Point] = [f(a)[: self.dim] for a in self.points]
        self.volume = normalized_volume(polytope)

    def __len__(self):
        return len(self.points)

    def index(self, point: Sequence[int]) -> int:
        return self.points.index(tuple(point))

    def simplex_volume(self, s: Sequence[int]) -> int:
        base = self.coords[s[0]]
        return abs(det([[a - b for a, b in zip(self.coords[i], base)] for i in s[1:]])) if self.dim else 1

    @cached_property
    def simplices(self) -> list[tuple[int, ...]]:
        """All full-dimensional simplices with vertices in the configuration."""
        return [s for s in combinations(range(len(self)), self.dim + 1) if self.simplex_volume(s)]

    @cached_property
    def circuits(self) -> list[Circuit]:
        """Every circuit of the configuration, indices into ``points``."""
        out = []
        n = len(self)
        for size in range(2, min(n, self.dim + 2) + 1):
            for sub in combinations(range(n), size):
                c = _circuit_on(self.coords, sub)
                if c is not None:
                    out.append(c)
        return out

    @cached_property
    def _circuit_masks(self) -> list[tuple[int, int]]:
        return [(_bits(c.positive), _bits(c.negative)) for c in self.circuits]

    def _boundary_facet(self, facet: tuple[int, ...]) -> bool:
        normal, c = self._facet_plane(facet)
        values = [sum(a * b for a, b in zip(normal, x)) - c for x in self.coords]
        return all(v >= 0 for v in values) or all(v <= 0 for v in values)

    @cached_property
    def _planes(self) -> dict:
        return {}

    def _facet_plane(self, facet: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
        cache = self._planes
        if facet not in cache:
            pts = [self.coords[i] for i in facet]
            normal = hyperplane_normal(pts) if self.dim else ()
            cache[facet] = (normal, sum(a * b for a, b in zip(normal, pts[0])))
        return cache[facet]

    def _side(self, facet: tuple[int, ...], i: int) -> int:
        normal, c = self._facet_plane(facet)
        v = sum(a * b for a, b in zip(normal, self.coords[i])) - c
        return (v > 0) - (v < 0)

    def compatible(self, s: Sequence[int], t: Sequence[int]) -> bool:
        """True iff the simplices meet in a common face (no circuit splits across them)."""
        ms, mt = _bits(s), _bits(t)
        for p, n in self._circuit_masks:
            if (p & ~ms == 0 and n & ~mt == 0) or (n & ~ms == 0 and p & ~mt == 0):
                return False
        return True


def _circuit_on(coords: list[Point], sub: tuple[int, ...]) -> Optional[Circuit]:
    """Circuit with support exactly ``sub`` (every proper subset independent), else None."""
    pts = [coords[i] for i in sub]
    rows = [list(col) for col in zip(*pts)] + [[1] * len(pts)]
    if rank(rows) != len(sub) - 1:
        return None
    lam = integer_kernel(rows, len(sub))[0]
    if any(x == 0 for x in lam):
        return None
    c = circuit(pts)
    return Circuit(tuple(sub[i] for i in c.positive), c.pos_coeffs,
                   tuple(sub[i] for i in c.negative), c.neg_coeffs)


def _open_simplex_constraints(coords: list[Point], s: Sequence[int]) -> list[LinearConstraint]:
    """Strict inequalities whose solutions are the interior of ``conv(s)``."""
    out = []
    for k in range(len(s)):
        facet = [coords[i] for j, i in enumerate(s) if j != k]
        normal = hyperplane_normal(facet)
        c = sum(a * b for a, b in zip(normal, facet[0]))
        apex = coords[s[k]]
        if sum(a * b for a, b in zip(normal, apex)) < c:
            normal, c = tuple(-a for a in normal), -c
        out.append(LinearConstraint(normal, -c, ">"))
    return out


def interiors_meet(cfg: PointConfig, s: Sequence[int], t: Sequence[int]) -> bool:
    """Exact check whether the open simplices ``s`` and ``t`` share a point."""
    if cfg.dim == 0:
        return True
    return fm_feasible(_open_simplex_constraints(cfg.coords, s) + _open_simplex_constraints(cfg.coords, t))


def meet_properly(cfg: PointConfig, s: Sequence[int], t: Sequence[int]) -> bool:
    """True iff some hyperplane contains the common vertices and strictly separates the rest.

    Equivalent to ``conv(s) cap conv(t) = conv(s cap t)``.
    """
    common = set(s) & set(t)
    only_s = [i for i in s if i not in common]
    only_t = [i for i in t if i not in common]
    if not only_s and not only_t:
        return True
    cs = []
    # unknowns (normal, offset): normal . x - offset
    for idx, rel, sign in [(sorted(common), "=", 1), (only_s, ">", 1), (only_t, ">", -1)]:
        for i in idx:
            cs.append(LinearConstraint(tuple(sign * a for a in cfg.coords[i]) + (-sign,), 0, rel))
    return fm_feasible(cs)


def is_valid_triangulation(cfg: PointConfig, t: Triangulation | Sequence[Sequence[int]]) -> bool:
    """Full-dimensional simplices, volumes summing to the polytope volume, and
    pairwise interior-disjoint simplices meeting in common faces."""
    simplices = [tuple(s) for s in t]
    n = len(cfg)
    if not simplices:
        return False
    for s in simplices:
        if len(s) != cfg.dim + 1 or len(set(s)) != len(s) or any(not 0 <= i < n for i in s):
            return False
        if cfg.simplex_volume(s) == 0:
            return False
    if len(set(frozenset(s) for s in simplices)) != len(simplices):
        return False
    if sum(cfg.simplex_volume(s) for s in simplices) != cfg.volume:
        return False
    for s, u in combinations(simplices, 2):
        if interiors_meet(cfg, s, u) or not meet_properly(cfg, s, u):
            return False
    return True


def _generic_point(cfg: PointConfig) -> tuple[Fraction, ...]:
    """A rational point in the interior avoiding every hyperplane spanned by the configuration."""
    d = cfg.dim
    verts = [cfg.coords[i] for i in range(len(cfg))]
    centre = [Fraction(sum(x[k] for x in verts), len(verts)) for k in range(d)]
    planes = set()
    for sub in combinations(range(len(cfg)), d):
        normal = hyperplane_normal([cfg.coords[i] for i in sub])
        if any(normal):
            planes.add((normal, sum(a * b for a, b in zip(normal, cfg.coords[sub[0]]))))
    for step in range(1, 1000):
        eps = Fraction(1, 7 * step + 3)
        q = [c + eps ** (k + 1) for k, c in enumerate(centre)]
        if all(sum(a * b for a, b in zip(nv, q)) != c for nv, c in planes):
            return tuple(q)
    raise RuntimeError("no generic point found")


def _contains_strictly(cfg: PointConfig, s: Sequence[int], q) -> bool:
    return all(con.holds(q) for con in _open_simplex_constraints(cfg.coords, s))


def enumerate_all(cfg: PointConfig, max_points: int = MAX_ENUM_POINTS) -> list[Triangulation]:
    """Every lattice triangulation of the configuration, each exactly once.

    Start from the simplex containing a generic interior point, then repeatedly
    close the smallest unmatched interior facet with a simplex on its other
    side that meets every chosen simplex properly.
    """
    if len(cfg) > max_points:
        raise CapExceeded(f"enumeration limited to {max_points} points, got {len(cfg)}")
    d = cfg.dim
    if d == 0:
        return [Triangulation(((0,),))]
    simplices = cfg.simplices
    by_facet: dict[tuple, list[tuple]] = {}
    for s in simplices:
        for f in combinations(s, d):
            by_facet.setdefault(f, []).append(s)
    boundary = {f: cfg._boundary_facet(f) for f in by_facet}
    compat: dict[tuple, set] = {s: set() for s in simplices}
    for s, t in combinations(simplices, 2):
        if cfg.compatible(s, t):
            compat[s].add(t)
            compat[t].add(s)

    q = _generic_point(cfg)
    seeds = [s for s in simplices if _contains_strictly(cfg, s, q)]
    found: set[Triangulation] = set()

    def grow(chosen: list[tuple], open_facets: dict, allowed: set):
        if not open_facets:
            t = Triangulation.of(chosen)
            if sum(cfg.simplex_volume(s) for s in chosen) != cfg.volume:
                raise RuntimeError("closed simplicial complex with the wrong volume")
            found.add(t)
            return
        f = min(open_facets)
        owner = open_facets[f]
        apex = next(i for i in owner if i not in f)
        own_side = cfg._side(f, apex)
        for t in by_facet[f]:
            if t == owner or t not in allowed:
                continue
            other = next(i for i in t if i not in f)
            if cfg._side(f, other) != -own_side:
                continue
            new_open = dict(open_facets)
            for g in combinations(t, d):
                if boundary[g]:
                    continue
                if g in new_open:
                    del new_open[g]
                else:
                    new_open[g] = t
            grow(chosen + [t], new_open, allowed & compat[t])

    for s in seeds:
        open_facets = {f: s for f in combinations(s, d) if not boundary[f]}
        grow([s], open_facets, set(compat[s]))
    return sorted(found)


def prism_words(h: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    """All words ``(i, j)`` whose parts with first index ``i`` form a composition of ``h_i``."""
    per = []
    for i, hi in enumerate(h, start=1):
        comps = list(_compositions(hi)) if hi else [()]
        per.append([(i, comp) for comp in comps])
    for choice in product(*per):
        letters = []
        for i, comp in choice:
            letters.extend([i] * len(comp))
        parts = {i: list(comp) for i, comp in choice}
        for order in sorted(set(permutations(letters))):
            pos = {i: 0 for i in parts}
            word = []
            for i in order:
                word.append((i, parts[i][pos[i]]))
                pos[i] += 1
            yield word


def _compositions(m: int) -> Iterator[tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    for first in range(1, m + 1):
        for rest in _compositions(m - first):
            yield (first,) + rest


def prism_word_triangulation(h: Sequence[int], word: Sequence[tuple[int, int]],
                             cfg: Optional[PointConfig] = None) -> Triangulation:
    """Staircase triangulation of a Lawrence prism read off a word.

    A counter ``c`` per fiber starts at 0; the letter ``(i, j)`` contributes the
    simplex on the current points of all fibers plus the point ``j`` steps up
    fiber ``i``, then advances fiber ``i`` by ``j``.
    """
    h = [int(x) for x in h]
    n = len(h)
    sums = [0] * n
    for letter in word:
        i, j = letter
        if not 1 <= i <= n or j < 1:
            raise ValueError(f"bad letter {letter!r}")
        sums[i - 1] += j
    if sums != h:
        raise ValueError(f"letters add up to {sums}, expected heights {h}")
    cfg = cfg or PointConfig(lawrence_prism(h))

    def point(k, c):  # fiber k (1-based) over e_{k-1}, e_0 = 0
        base = [0] * n
        if k > 1:
            base[k - 2] = 1
        base[n - 1] += c
        return cfg.index(base)

    state = [0] * n
    simplices = []
    for i, j in word:
        s = [point(k + 1, state[k]) for k in range(n)] + [point(i, state[i - 1] + j)]
        simplices.append(s)
        state[i - 1] += j
    return Triangulation.of(simplices)


def count_formula(h: Sequence[int]) -> int:
    """Number of lattice triangulations of the Lawrence prism with heights ``h``."""
    hs = [x for x in h if x > 0]
    total = 0
    for ls in product(*[range(1, x + 1) for x in hs]):
        term = factorial(sum(ls))
        for l in ls:
            term //= factorial(l)
        for l, x in zip(ls, hs):
            term *= comb(x - 1, l - 1)
        total += term
    return total


def flip(cfg: PointConfig, t: Triangulation, c: Circuit) -> Optional[Triangulation]:
    """Flip ``t`` along ``c`` if one half-triangulation of the circuit sits in ``t``
    with all its cells sharing a link; otherwise None."""
    cells = [frozenset(s) for s in t]
    for side in (True, False):
        here = c.half_triangulation(side)
        there = c.half_triangulation(not side)
        links = []
        for rho in here:
            link = {s - rho for s in cells if rho <= s}
            if not link:
                break
            links.append(link)
        else:
            if all(l == links[0] for l in links):
                link = links[0]
                removed = {rho | l for rho in here for l in link}
                added = {rho | l for rho in there for l in link}
                new = [s for s in cells if s not in removed] + list(added)
                if any(len(s) != cfg.dim + 1 or cfg.simplex_volume(sorted(s)) == 0 for s in added):
                    return None
                return Triangulation.of(new)
    return None


def flip_graph(cfg: PointConfig, ts: Optional[list[Triangulation]] = None) -> tuple[list[Triangulation], set[tuple[int, int]]]:
    """Triangulations and the index pairs joined by a single flip."""
    ts = enumerate_all(cfg) if ts is None else ts
    where = {t: i for i, t in enumerate(ts)}
    edges = set()
    for i, t in enumerate(ts):
        for c in cfg.circuits:
            u = flip(cfg, t, c)
            if u is None:
                continue
            if u not in where:
                raise RuntimeError("flip left the set of triangulations")
            j = where[u]
            if i != j:
                edges.add((min(i, j), max(i, j)))
    return ts, edges


def is_connected(n: int, edges: set[tuple[int, int]]) -> bool:
    if n == 0:
        return True
    adj = {i: [] for i in range(n)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    queue = deque([0])
    while queue:
        for j in adj[queue.popleft()]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen) == n


def gkz(cfg: PointConfig, t: Triangulation) -> tuple[int, ...]:
    """Per point, the total volume of the simplices using it."""
    phi = [0] * len(cfg)
    for s in t:
        v = cfg.simplex_volume(s)
        for i in s:
            phi[i] += v
    return tuple(phi)


@dataclass
class SecondaryReport:
    dimension: int
    vertex_count: int
    edge_count: int
    facet_count: int
    is_simple: bool
    all_coherent: bool
    triangulation_count: int
    hull_edges: set  # pairs of triangulation indices

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "facet_count": self.facet_count,
            "is_simple": self.is_simple,
            "all_coherent": self.all_coherent,
            "triangulation_count": self.triangulation_count,
        }


def secondary_polytope(cfg: PointConfig, ts: Optional[list[Triangulation]] = None) -> SecondaryReport:
    """Combinatorics of the hull of all GKZ vectors."""
    ts = enumerate_all(cfg) if ts is None else ts
    vectors = [gkz(cfg, t) for t in ts]
    hull = double_description(vectors)
    index = {v: i for i, v in enumerate(vectors)}
    verts = hull.vertex_indices()
    vert_points = {hull.points[i] for i in verts}
    edges = {tuple(sorted((index[hull.points[a]], index[hull.points[b]]))) for a, b in hull.edges()}
    degree = {i: 0 for i in verts}
    for a, b in hull.edges():
        degree[a] += 1
        degree[b] += 1
    return SecondaryReport(
        dimension=hull.dim,
        vertex_count=len(verts),
        edge_count=len(edges),
        facet_count=len(hull.facets),
        is_simple=all(k == hull.dim for k in degree.values()),
        all_coherent=len(set(vectors)) == len(vectors) and all(v in vert_points for v in vectors),
        triangulation_count=len(ts),
        hull_edges=edges,
    )
