"""Exact integer and rational linear algebra.

Matrices are plain row-major sequences of Python ints, so nothing here can
overflow. Rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Matrix = Sequence[Sequence[int]]

MAX_FM_VARS = 8


class DimensionError(ValueError):
    """Raised when matrix or vector shapes do not fit an operation."""


def _shape(m: Matrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for row in m:
        if len(row) != cols:
            raise DimensionError("ragged matrix")
    return rows, cols


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Matrix) -> list[list[int]]:
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> list[list[int]]:
    _, ac = _shape(a)
    br, _ = _shape(b)
    if ac != br:
        raise DimensionError(f"cannot multiply {len(a)}x{ac} by {br}x{len(b[0]) if br else 0}")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def det(m: Matrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n, c = _shape(m)
    if n != c:
        raise DimensionError(f"determinant of a non-square {n}x{c} matrix")
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank(m: Matrix) -> int:
    """Rank over the rationals (Bareiss elimination, no fractions)."""
    rows, cols = _shape(m)
    a = [list(map(int, row)) for row in m]
    r = 0
    prev = 1
    for col in range(cols):
        piv = next((i for i in range(r, rows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pivot = a[r][col]
        for i in range(r + 1, rows):
            for j in range(col + 1, cols):
                a[i][j] = (a[i][j] * pivot - a[i][col] * a[r][j]) // prev
            a[i][col] = 0
        prev = pivot
        r += 1
        if r == rows:
            break
    return r


def hnf(m: Matrix) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``h == u @ m``. ``h`` is in
    row echelon form, pivots are positive and the entries above each pivot
    lie in ``[0, pivot)``. Zero rows sit at the bottom.
    """
    rows, cols = _shape(m)
    h = [list(map(int, row)) for row in m]
    u = identity(rows)
    r = 0
    for col in range(cols):
        if r == rows:
            break
        # gcd-combine all rows below r into row r for this column
        for i in range(r + 1, rows):
            if h[i][col] == 0:
                continue
            a, b = h[r][col], h[i][col]
            g, x, y = _xgcd(a, b)
            p, q = -b // g, a // g
            hr, hi = h[r], h[i]
            h[r] = [x * s + y * t for s, t in zip(hr, hi)]
            h[i] = [p * s + q * t for s, t in zip(hr, hi)]
            ur, ui = u[r], u[i]
            u[r] = [x * s + y * t for s, t in zip(ur, ui)]
            u[i] = [p * s + q * t for s, t in zip(ur, ui)]
        if h[r][col] == 0:
            continue
        if h[r][col] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        pivot = h[r][col]
        for i in range(r):
            q = h[i][col] // pivot
            if q:
                h[i] = [s - q * t for s, t in zip(h[i], h[r])]
                u[i] = [s - q * t for s, t in zip(u[i], u[r])]
        r += 1
    return h, u


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def integer_kernel(m: Matrix, ncols: Optional[int] = None) -> list[list[int]]:
    """Z-basis of ``{x in Z^n : m x = 0}`` as a list of row vectors."""
    if len(m) == 0:
        return identity(ncols or 0)
    h, u = hnf(transpose(m))
    return [u[i] for i, row in enumerate(h) if not any(row)]


def inverse_unimodular(m: Matrix) -> list[list[int]]:
    """Integer inverse of a matrix with determinant +-1."""
    n, c = _shape(m)
    if n != c:
        raise DimensionError("inverse of a non-square matrix")
    d = det(m)
    if abs(d) != 1:
        raise ValueError(f"matrix is not unimodular (det {d})")
    inv = solve_matrix(m)
    return [[int(x) for x in row] for row in inv]


def solve_matrix(m: Matrix) -> list[list[Fraction]]:
    """Rational inverse of a non-singular square matrix (Gauss-Jordan)."""
    n, _ = _shape(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def solve_rational(m: Matrix, b: Sequence) -> Optional[list[Fraction]]:
    """Some rational ``x`` with ``m x == b``, or ``None`` if there is none.

    Free variables are set to zero.
    """
    rows, cols = _shape(m)
    if len(b) != rows:
        raise DimensionError("right-hand side length does not match rows")
    a = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(m, b)]
    pivots = []
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        a[r] = [x / p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    if any(a[i][cols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for i, col in enumerate(pivots):
        x[col] = a[i][cols]
    return x


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def rational_to_primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to a primitive integer vector."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


# --------------------------------------------------------------------------
# Fourier-Motzkin feasibility


@dataclass(frozen=True)
class LinearConstraint:
    """``coefficients . x + offset  (relation)  0`` with relation ``>=``, ``>`` or ``=``."""

    coefficients: tuple
    offset: Fraction = Fraction(0)
    relation: str = ">="

    def __post_init__(self):
        if self.relation not in (">=", ">", "="):
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        object.__setattr__(self, "offset", Fraction(self.offset))

    def holds(self, x: Sequence) -> bool:
        value = sum(c * Fraction(v) for c, v in zip(self.coefficients, x)) + self.offset
        if self.relation == ">=":
            return value >= 0
        if self.relation == ">":
            return value > 0
        return value == 0


def _constant_holds(offset, relation) -> bool:
    if relation == ">=":
        return offset >= 0
    if relation == ">":
        return offset > 0
    return offset == 0


def fm_feasible(cs: Sequence[LinearConstraint]) -> bool:
    """Decide whether a system of (possibly strict) linear constraints has a
    rational solution, by exact Fourier-Motzkin elimination.

    Strict rows ``a.x + c > 0`` are replaced by ``a.x + c - eps >= 0`` with an
    extra variable ``eps`` that is never eliminated; the system is feasible
    iff the projection onto ``eps`` meets ``(0, 1]``. Since the lifted system
    is non-strict, Chernikov's history rule prunes redundant combinations.
    """
    cs = list(cs)
    if not cs:
        return True
    nvars = len(cs[0].coefficients)
    if any(len(c.coefficients) != nvars for c in cs):
        raise DimensionError("constraints have different variable counts")
    if nvars > MAX_FM_VARS:
        raise ValueError(f"fm_feasible supports at most {MAX_FM_VARS} variables, got {nvars}")
    if nvars == 0:
        return all(_constant_holds(c.offset, c.relation) for c in cs)
    return _fm(cs, nvars)


def _fm(cs: Sequence[LinearConstraint], nvars: int) -> bool:
    # Rows are integer tuples (x_0..x_{n-1}, eps, const): row . (x, eps, 1) >= 0
    eqs = []
    ineqs = []
    for c in cs:
        vec = list(c.coefficients) + [Fraction(0), c.offset]
        if c.relation == "=":
            eqs.append(vec)
        else:
            if c.relation == ">":
                vec[nvars] = Fraction(-1)
            ineqs.append(vec)

    # substitute equalities away
    while eqs:
        e = eqs.pop()
        j = next((k for k in range(nvars) if e[k] != 0), None)
        if j is None:
            if e[-1] != 0:
                return False
            continue
        pivot = e[j]

        def subst(row, e=e, j=j, pivot=pivot):
            if row[j] == 0:
                return row
            f = row[j] / pivot
            return [x - f * y for x, y in zip(row, e)]

        eqs = [subst(r) for r in eqs]
        ineqs = [subst(r) for r in ineqs]

    width = nvars + 2
    rows = {}
    for idx, vec in enumerate(ineqs):
        _add_row(rows, rational_to_primitive(vec), frozenset([idx]))
    # eps <= 1
    bound = [0] * width
    bound[nvars] = -1
    bound[-1] = 1
    _add_row(rows, tuple(bound), frozenset([len(ineqs)]))

    remaining = [j for j in range(nvars) if any(r[j] for r in rows)]
    eliminated = 0
    while remaining:
        # eliminate the variable with the fewest generated pairs
        j = min(remaining, key=lambda k: sum(1 for r in rows if r[k] > 0) * sum(1 for r in rows if r[k] < 0))
        remaining.remove(j)
        eliminated += 1
        pos = [(r, h) for r, h in rows.items() if r[j] > 0]
        neg = [(r, h) for r, h in rows.items() if r[j] < 0]
        new = {}
        for r, h in rows.items():
            if r[j] == 0:
                _add_row(new, r, h)
        for rp, hp in pos:
            for rn, hn in neg:
                hist = hp | hn
                if len(hist) > eliminated + 1:
                    continue
                a, b = rp[j], -rn[j]
                comb = primitive([b * x + a * y for x, y in zip(rp, rn)])
                _add_row(new, comb, hist)
        rows = new
        for r in rows:
            if not any(r[:-1]) and r[-1] < 0:
                return False

    # rows now only involve eps and the constant: alpha*eps + beta >= 0
    lo, lo_strict = Fraction(0), True
    hi, hi_strict = Fraction(1), False
    for r in rows:
        alpha, beta = r[nvars], r[-1]
        if alpha == 0:
            if beta < 0:
                return False
        elif alpha > 0:
            v = Fraction(-beta, alpha)
            if v > lo or (v == lo and not lo_strict):
                lo, lo_strict = v, False
        else:
            v = Fraction(beta, -alpha)
            if v < hi:
                hi, hi_strict = v, False
    if lo < hi:
        return True
    return lo == hi and not lo_strict and not hi_strict


def _add_row(rows: dict, vec: tuple, hist: frozenset) -> None:
    if not any(vec[:-1]):
        if vec[-1] >= 0:
            return  # trivially true
    old = rows.get(vec)
    if old is None or len(hist) < len(old):
        rows[vec] = hist
