"""Constructions of the polytope families that show up in degree-one theory."""

from __future__ import annotations

import random
from typing import Sequence

from .exactmath import identity
from .polytope import AffineMap, LatticePolytope

MAX_SCRAMBLE_ENTRY = 5


def _unit(n: int, i: int, scale: int = 1) -> tuple[int, ...]:
    return tuple(scale if j == i else 0 for j in range(n))


def basic_simplex(n: int) -> LatticePolytope:
    """``conv(0, e_1, ..., e_n)``."""
    if n < 0:
        raise ValueError("dimension must be non-negative")
    return LatticePolytope([(0,) * n] + [_unit(n, i) for i in range(n)], n, name=f"basic simplex {n}")


def lawrence_prism(heights: Sequence[int]) -> LatticePolytope:
    """Lawrence prism: segments of lengths ``h_1..h_n`` in direction ``e_n``
    sitting over the vertices ``0, e_1, ..., e_{n-1}`` of a basic simplex."""
    h = [int(x) for x in heights]
    n = len(h)
    if n < 1:
        raise ValueError("a Lawrence prism needs at least one height")
    if any(x < 0 for x in h):
        raise ValueError("heights must be non-negative")
    if not any(h):
        raise ValueError("at least one height must be positive")
    points = []
    for i, hi in enumerate(h):
        base = (0,) * n if i == 0 else _unit(n, i - 1)
        points.append(base)
        points.append(tuple(b + hi * u for b, u in zip(base, _unit(n, n - 1))))
    return LatticePolytope(points, n, name="Lawrence prism " + ",".join(map(str, h)))


def exceptional_simplex(n: int) -> LatticePolytope:
    """``conv(0, 2e_1, 2e_2, e_3, ..., e_n)``."""
    if n < 2:
        raise ValueError("exceptional simplices exist in dimension >= 2")
    points = [(0,) * n, _unit(n, 0, 2), _unit(n, 1, 2)] + [_unit(n, i) for i in range(2, n)]
    return LatticePolytope(points, n, name=f"exceptional simplex {n}")


def cayley(polys: Sequence[LatticePolytope]) -> LatticePolytope:
    """Cayley polytope: ``conv(P_i x {e_i})`` in ``M' + Z^r`` with ``e_0 = 0``."""
    if not polys:
        raise ValueError("cayley needs at least one polytope")
    m = polys[0].ambient_dim
    if any(p.ambient_dim != m for p in polys):
        raise ValueError("all polytopes must live in the same lattice")
    r = len(polys) - 1
    points = []
    for i, p in enumerate(polys):
        tag = (0,) * r if i == 0 else _unit(r, i - 1)
        points.extend(v + tag for v in p.vertices)
    return LatticePolytope(points, m + r)


def pyramid(p: LatticePolytope, r: int = 1) -> LatticePolytope:
    """``r``-fold pyramid: Cayley polytope of ``p`` and ``r`` copies of a point."""
    if r < 1:
        raise ValueError("pyramid needs r >= 1")
    pt = LatticePolytope([(0,) * p.ambient_dim], p.ambient_dim)
    return cayley([p] + [pt] * r)


def dilate(p: LatticePolytope, k: int) -> LatticePolytope:
    if k < 1:
        raise ValueError("dilation factor must be >= 1")
    return LatticePolytope([tuple(k * x for x in v) for v in p.vertices], p.ambient_dim)


def random_unimodular(n: int, rng: random.Random, steps: int | None = None) -> list[list[int]]:
    """Product of elementary shears and signed swaps with entries bounded by 5."""
    m = identity(n)
    if n == 0:
        return m
    steps = 4 * n if steps is None else steps
    done = 0
    attempts = 0
    while done < steps and attempts < 50 * steps:
        attempts += 1
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j or rng.random() < 0.25:
            # swap rows i, j and maybe negate one
            trial = [row[:] for row in m]
            trial[i], trial[j] = trial[j], trial[i]
            if rng.random() < 0.5:
                trial[i] = [-x for x in trial[i]]
        else:
            c = rng.choice([x for x in range(-MAX_SCRAMBLE_ENTRY, MAX_SCRAMBLE_ENTRY + 1) if x])
            trial = [row[:] for row in m]
            trial[i] = [a + c * b for a, b in zip(m[i], m[j])]
        if all(abs(x) <= MAX_SCRAMBLE_ENTRY for row in trial for x in row):
            m = trial
            done += 1
    return m


def scramble(p: LatticePolytope, seed: int = 0) -> tuple[LatticePolytope, AffineMap]:
    """Apply a seeded pseudo-random unimodular affine map; returns image and map."""
    rng = random.Random(seed)
    n = p.ambient_dim
    linear = random_unimodular(n, rng)
    shift = tuple(rng.randint(-10, 10) for _ in range(n))
    f = AffineMap(linear, shift)
    return p.apply(f), f
