"""End-to-end acceptance battery.

Each criterion is a function returning a :class:`CriterionResult`; the corpus
builders are deterministic given their seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Optional

from . import adet
from .classify import Tag, classify, verify_main_theorem
from .construct import basic_simplex, cayley, dilate, exceptional_simplex, lawrence_prism, pyramid, scramble
from .ehrhart import check_reciprocity, degree_via_interior, hstar
from .polytope import LatticePolytope
from .triang import (PointConfig, count_formula, enumerate_all, flip_graph, is_connected,
                     secondary_polytope)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2} {self.title}: {self.detail}"


def random_heights(rng: random.Random, max_n: int = 5, max_sum: int = 12) -> tuple[int, ...]:
    while True:
        n = rng.randint(1, max_n)
        h = tuple(rng.randint(0, 4) for _ in range(n))
        if 0 < sum(h) <= max_sum:
            return h


def embed(p: LatticePolytope, extra: int) -> LatticePolytope:
    """Same polytope with ``extra`` zero coordinates appended."""
    return LatticePolytope([v + (0,) * extra for v in p.vertices], p.ambient_dim + extra)


def unit_cube(n: int) -> LatticePolytope:
    return LatticePolytope(list(product((0, 1), repeat=n)), n)


def cross_polytope(n: int) -> LatticePolytope:
    pts = []
    for i in range(n):
        for s in (1, -1):
            pts.append(tuple(s if j == i else 0 for j in range(n)))
    return LatticePolytope(pts, n)


def random_polytope(rng: random.Random, n: int, box: int = 3, count: Optional[int] = None) -> LatticePolytope:
    """Hull of random points in ``[0, box]^n``, resampled until full-dimensional."""
    while True:
        pts = [tuple(rng.randint(0, box) for _ in range(n)) for _ in range(count or n + 2)]
        p = LatticePolytope(pts, n)
        if p.dim == n:
            return p


def high_degree_polytopes(seed: int = 7, count: int = 20) -> list[LatticePolytope]:
    """Polytopes of degree at least two."""
    rng = random.Random(seed)
    square = unit_cube(2)
    fixed = [dilate(square, 2), dilate(square, 3), dilate(basic_simplex(2), 3), unit_cube(3),
             cross_polytope(3), dilate(exceptional_simplex(2), 2), dilate(lawrence_prism((1, 1)), 2),
             dilate(basic_simplex(3), 4)]
    out = [scramble(p, i)[0] for i, p in enumerate(fixed)]
    while len(out) < count:
        p = random_polytope(rng, rng.randint(2, 3), 3, 6)
        if hstar(p).degree >= 2:
            out.append(scramble(p, rng.randrange(1000))[0])
    return out[:count]


@lru_cache(maxsize=None)
def corpus(seed: int = 0) -> tuple[LatticePolytope, ...]:
    """Mixed corpus: every construction, scrambled copies, dilates, embeddings and random polytopes."""
    rng = random.Random(seed)
    base = [basic_simplex(n) for n in range(1, 6)]
    base += [exceptional_simplex(n) for n in range(2, 6)]
    base += [lawrence_prism(h) for h in [(1,), (4,), (1, 1), (3, 2), (2, 0), (1, 1, 1), (2, 1, 0), (1, 1, 2),
                                          (3, 2, 1, 4, 2), (0, 0, 3), (1, 0, 0, 0)]]
    base += [lawrence_prism(random_heights(rng)) for _ in range(12)]
    base += [pyramid(lawrence_prism((2, 2)), 2), pyramid(exceptional_simplex(2), 1), pyramid(unit_cube(2), 1)]
    base += [cayley([lawrence_prism((1, 2)), lawrence_prism((2, 1))]), cayley([unit_cube(2), unit_cube(2)]),
             cayley([basic_simplex(2), dilate(basic_simplex(2), 2)])]
    base += [dilate(basic_simplex(n), k) for n in (1, 2, 3) for k in (2, 3)]
    base += [dilate(unit_cube(2), 2), dilate(exceptional_simplex(2), 2), unit_cube(3), cross_polytope(3),
             cross_polytope(2), dilate(lawrence_prism((1, 2)), 2)]
    base += [random_polytope(rng, rng.randint(2, 4), 2) for _ in range(12)]
    out = list(base)
    for i, p in enumerate(base):
        out.append(scramble(p, seed * 1000 + i)[0])
        out.append(scramble(p, seed * 1000 + 250 + i)[0])
    for i, p in enumerate(base[:40]):
        lifted = embed(p, 1 + i % 2)
        out.append(scramble(lifted, seed * 1000 + 500 + i)[0])
    return tuple(out)


def _tail(bad: list, limit: int = 3) -> str:
    return "; ".join(str(b) for b in bad[:limit])


def criterion_1() -> CriterionResult:
    rng = random.Random(1)
    bad = []
    for _ in range(20):
        h = random_heights(rng)
        got = hstar(lawrence_prism(h)).coeffs
        want = (1, sum(h) - 1) + (0,) * (len(h) - 1)
        if got != want[: len(got)] or len(got) != len(h) + 1:
            bad.append((h, got))
    for n in range(2, 6):
        got = hstar(exceptional_simplex(n)).coeffs
        if got != (1, 3) + (0,) * (n - 1):
            bad.append((f"exceptional {n}", got))
    return CriterionResult(1, "h*-vectors of prisms and exceptional simplices", not bad,
                           f"24 polytopes checked{', failures: ' + _tail(bad) if bad else ''}")


def criterion_2() -> CriterionResult:
    ps = corpus()
    bad = [p for p in ps if hstar(p).degree != degree_via_interior(p)]
    return CriterionResult(2, "degree from h* equals degree from interior points", not bad,
                           f"{len(ps)} polytopes, {len(bad)} disagreements")


def criterion_3() -> CriterionResult:
    ps = corpus()
    bad = []
    for p in ps:
        h = hstar(p)
        a, b, c = h.degree == 0, h.volume == 1, classify(p).tag is Tag.BASIC_SIMPLEX
        if not a == b == c:
            bad.append((p, a, b, c))
    return CriterionResult(3, "degree 0 iff volume 1 iff basic simplex", not bad,
                           f"{len(ps)} polytopes, {len(bad)} disagreements")


def criterion_4() -> CriterionResult:
    ps = corpus()
    bad = []
    for p in ps:
        h = hstar(p)
        if (h.degree <= 1) != (p.count_lattice_points(1) == h.volume + p.dim):
            bad.append(p)
    return CriterionResult(4, "degree <= 1 iff |P cap M| = Vol + dim", not bad,
                           f"{len(ps)} polytopes, {len(bad)} disagreements")


def criterion_5() -> CriterionResult:
    rng = random.Random(5)
    bad = []
    for i in range(50):
        h = random_heights(rng)
        p, _ = scramble(lawrence_prism(h), 100 + i)
        c = classify(p)
        positive = tuple(sorted(h, reverse=True))
        if hstar(p).volume == 1:
            ok = c.tag is Tag.BASIC_SIMPLEX
        else:
            ok = c.tag is Tag.LAWRENCE_PRISM and c.heights == positive
        if not ok or not verify_main_theorem(p):
            bad.append((h, c.tag.value, c.heights))
    for i in range(10):
        n = 2 + i % 4
        p, _ = scramble(exceptional_simplex(n), 200 + i)
        c = classify(p)
        if c.tag is not Tag.EXCEPTIONAL or c.n != n or not verify_main_theorem(p):
            bad.append((f"exceptional {n}", c.tag.value))
    for p in high_degree_polytopes():
        if classify(p).tag is not Tag.NOT_DEGREE_LE_ONE or not verify_main_theorem(p):
            bad.append((p, "expected NotDegreeLeOne"))
    return CriterionResult(5, "classification roundtrip with witnesses", not bad,
                           f"80 polytopes{', failures: ' + _tail(bad) if bad else ''}")


def subpolytope_pairs(seed: int = 6, count: int = 100) -> list[tuple[LatticePolytope, LatticePolytope]]:
    """Pairs ``(Q, P)`` with ``Q`` inside ``P`` and of the same dimension."""
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < count:
        n = rng.randint(2, 3)
        p = random_polytope(rng, n, 3, rng.randint(n + 2, n + 5))
        pts = p.lattice_points(1)
        sub = LatticePolytope(rng.sample(pts, rng.randint(n + 1, len(pts))), n)
        if sub.dim == n:
            pairs.append((sub, p))
    return pairs


def criterion_6() -> CriterionResult:
    bad = [(q, p) for q, p in subpolytope_pairs() if not hstar(q) <= hstar(p)]
    return CriterionResult(6, "h* is monotone under inclusion", not bad,
                           f"100 pairs, {len(bad)} violations")


def line_segment(h: int) -> LatticePolytope:
    return LatticePolytope([(0,), (h,)], 1)


def prism_scope() -> list[tuple[int, ...]]:
    """Heights with at most three entries and sum between 1 and 6."""
    return [h for n in (1, 2, 3) for h in product(range(7), repeat=n) if 0 < sum(h) <= 6]


@lru_cache(maxsize=None)
def triangulation_scope() -> tuple:
    """``(label, config, triangulations)`` for every polytope in the triangulation criteria."""
    items = [(f"[0,{h}]", line_segment(h)) for h in range(1, 7)]
    items += [("exceptional 2", exceptional_simplex(2)), ("exceptional 3", exceptional_simplex(3))]
    items += [(f"prism {h}", lawrence_prism(h)) for h in prism_scope()]
    out = []
    for label, p in items:
        cfg = PointConfig(p)
        out.append((label, cfg, tuple(enumerate_all(cfg))))
    return tuple(out)


def criterion_7() -> CriterionResult:
    bad = []
    counts = {label: len(ts) for label, _, ts in triangulation_scope()}
    for h in range(1, 7):
        if counts[f"[0,{h}]"] != 2 ** (h - 1):
            bad.append((h, counts[f"[0,{h}]"]))
    for label, want in [("exceptional 2", 14), ("exceptional 3", 14), ("prism (1, 1, 1)", 6),
                        ("prism (2, 1)", 5), ("prism (1, 1, 2)", 18)]:
        if counts[label] != want:
            bad.append((label, counts[label], want))
    for h in prism_scope():
        if counts[f"prism {h}"] != count_formula(h):
            bad.append((h, counts[f"prism {h}"], count_formula(h)))
    return CriterionResult(7, "triangulation counts", not bad,
                           f"{len(counts)} configurations{', failures: ' + _tail(bad) if bad else ''}")


def criterion_8() -> CriterionResult:
    bad = []
    reports = {}
    for label, cfg, ts in triangulation_scope():
        r = secondary_polytope(cfg, list(ts))
        reports[label] = r
        if r.dimension != len(cfg) - cfg.dim - 1 or not r.all_coherent or not r.is_simple:
            bad.append((label, r.to_dict()))
    ex = reports["exceptional 2"]
    if (ex.vertex_count, ex.edge_count, ex.facet_count) != (14, 21, 9):
        bad.append(("associahedron f-vector", ex.vertex_count, ex.edge_count, ex.facet_count))
    for n, want in [(1, 1), (2, 2), (3, 6), (4, 24)]:
        cfg = PointConfig(lawrence_prism((1,) * n))
        r = secondary_polytope(cfg)
        if r.vertex_count != want:
            bad.append((f"permutahedron {n}", r.vertex_count))
    return CriterionResult(8, "secondary polytopes: dimension, coherence, simplicity", not bad,
                           f"{len(reports) + 4} configurations{', failures: ' + _tail(bad) if bad else ''}")


def criterion_9() -> CriterionResult:
    bad = []
    for label, cfg, ts in triangulation_scope():
        ts = list(ts)
        _, edges = flip_graph(cfg, ts)
        r = secondary_polytope(cfg, ts)
        if not is_connected(len(ts), edges) or edges != r.hull_edges:
            bad.append(label)
    return CriterionResult(9, "flip graph is connected and equals the secondary polytope graph", not bad,
                           f"{len(triangulation_scope())} configurations{', failures: ' + _tail(bad) if bad else ''}")


def adet_heights(max_n: int = 4, max_sum: int = 8) -> list[tuple[int, ...]]:
    return [h for n in range(1, max_n + 1) for h in product(range(1, max_sum + 1), repeat=n) if sum(h) <= max_sum]


def criterion_10() -> CriterionResult:
    bad = []
    if not adet.verify_worked_example():
        bad.append("worked example")
    for h in adet_heights():
        if adet.principal_adet_prism(h).total_degree() != (len(h) + 1) * sum(h):
            bad.append(h)
    v = adet.MultiPoly.var
    lin1 = adet.UniPolySym([v("a1"), v("b1")])
    lin2 = adet.UniPolySym([v("a2"), v("b2")])
    quad = adet.UniPolySym([v("a0"), v("c0"), v("b0")])
    checks = [
        (adet.resultant(lin1, lin2), "a1 b2 - a2 b1"),
        (adet.resultant(quad, lin1), "a1^2 b0 + b1^2 a0 - a1 b1 c0"),
        (adet.resultant(quad, lin2), "a2^2 b0 + b2^2 a0 - a2 b2 c0"),
        (adet.discriminant(quad), "4 a0 b0 - c0^2"),
        (adet.discriminant(lin1), "1"),
    ]
    for got, text in checks:
        if got != adet.parse_poly(text):
            bad.append(text)
    return CriterionResult(10, "principal A-determinant of Lawrence prisms", not bad,
                           f"worked example, {len(adet_heights())} degree checks, 5 printed factors"
                           f"{', failures: ' + _tail(bad) if bad else ''}")


def criterion_11() -> CriterionResult:
    ps = corpus()
    bad = [p for p in ps if not check_reciprocity(p)]
    return CriterionResult(11, "reciprocity against interior counts", not bad,
                           f"{len(ps)} polytopes, {len(bad)} failures")


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
    7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10, 11: criterion_11,
}


def run(only: Optional[list[int]] = None) -> list[CriterionResult]:
    out = []
    for k in sorted(only or CRITERIA):
        start = time.perf_counter()
        try:
            r = CRITERIA[k]()
        except Exception as exc:  # a crash counts as a failure, not an abort
            r = CriterionResult(k, CRITERIA[k].__name__, False, f"{type(exc).__name__}: {exc}")
        r.seconds = time.perf_counter() - start
        out.append(r)
    return out
