"""Ehrhart counting, h*-vectors and the degree of a lattice polytope."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .polytope import LatticePolytope


class InternalConsistencyError(RuntimeError):
    """A computed quantity violates an identity that always holds (a counting bug)."""


@dataclass(frozen=True)
class HStarVector:
    """Coefficients of ``(1 - t)^(dim + 1) * sum_k |k P cap M| t^k``."""

    coeffs: tuple[int, ...]
    dim: int

    @property
    def degree(self) -> int:
        return max(i for i, c in enumerate(self.coeffs) if c != 0)

    @property
    def volume(self) -> int:
        return sum(self.coeffs)

    def trimmed(self) -> list[int]:
        """Coefficients up to the degree (no trailing zeros)."""
        return list(self.coeffs[: self.degree + 1])

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __le__(self, other: "HStarVector") -> bool:
        """Coefficientwise comparison, padding the shorter vector with zeros."""
        n = max(len(self), len(other))
        a = list(self.coeffs) + [0] * (n - len(self))
        b = list(other.coeffs) + [0] * (n - len(other))
        return all(x <= y for x, y in zip(a, b))


def ehrhart_counts(p: LatticePolytope, kmax: int) -> list[int]:
    """``|k P cap M|`` for ``k = 0..kmax``."""
    return [p.count_lattice_points(k) for k in range(kmax + 1)]


def interior_counts(p: LatticePolytope, kmax: int) -> list[int]:
    """``|int(k P) cap M|`` for ``k = 0..kmax`` (relative interior)."""
    return [p.count_interior_lattice_points(k) for k in range(kmax + 1)]


def hstar(p: LatticePolytope) -> HStarVector:
    """h*-vector from the first ``dim + 1`` Ehrhart counts via the binomial transform."""
    d = p.dim
    counts = ehrhart_counts(p, d)
    coeffs = []
    for j in range(d + 1):
        coeffs.append(sum((-1) ** i * comb(d + 1, i) * counts[j - i] for i in range(j + 1)))
    h = HStarVector(tuple(coeffs), d)
    if coeffs[0] != 1 or any(c < 0 for c in coeffs):
        raise InternalConsistencyError(f"impossible h*-vector {coeffs} for {p!r}")
    if d >= 1 and coeffs[1] != counts[1] - d - 1:
        raise InternalConsistencyError(f"h*_1 = {coeffs[1]} disagrees with |P cap M| - dim - 1")
    return h


def normalized_volume(p: LatticePolytope) -> int:
    return hstar(p).volume


def degree(p: LatticePolytope) -> int:
    return hstar(p).degree


def degree_via_interior(p: LatticePolytope) -> int:
    """Smallest ``i >= 0`` such that ``int(k P)`` has no lattice points for
    ``1 <= k <= dim - i``, counted directly."""
    n = p.dim
    for k in range(1, n + 1):
        if p.count_interior_lattice_points(k):
            return n - k + 1
    return 0


def interior_series(h: HStarVector, kmax: int) -> list[int]:
    """Coefficients of ``(h*_n t + ... + h*_0 t^(n+1)) / (1 - t)^(n+1)`` up to ``t^kmax``."""
    n = h.dim
    out = []
    for k in range(kmax + 1):
        total = 0
        for j, c in enumerate(h.coeffs):
            shift = n + 1 - j
            if k >= shift:
                total += c * comb(k - shift + n, n)
        out.append(total)
    return out


def check_reciprocity(p: LatticePolytope) -> bool:
    """Cross-check the h*-vector against directly counted interior points.

    (a) dilates ``1..n-d`` have empty interior, (b) ``h*_d`` equals the
    interior count of the ``(n-d+1)``-th dilate, (c) interior counts agree
    with the reciprocal generating function up to ``k = n + 2``.
    """
    h = hstar(p)
    n, d = h.dim, h.degree
    inner = interior_counts(p, n + 2)
    if any(inner[k] for k in range(1, n - d + 1)):
        return False
    if inner[n - d + 1] != h.coeffs[d]:
        return False
    return inner == interior_series(h, n + 2)
