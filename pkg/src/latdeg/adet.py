"""Symbolic resultants, discriminants and the principal A-determinant of a Lawrence prism.

Polynomials have integer coefficients and are stored sparsely as maps from
exponent vectors to coefficients. Determinants are expanded by cofactors with
memoisation, which is plenty for the Sylvester matrices met here.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence


def _var_key(name: str):
    return [int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", name)]


class MultiPoly:
    """Sparse multivariate polynomial over the integers."""

    def __init__(self, variables: Sequence[str] = (), terms: Optional[dict] = None):
        self.variables = tuple(variables)
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> "MultiPoly":
        return cls((), {(): c})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls((name,), {(1,): 1})

    def _with_vars(self, variables: tuple) -> dict:
        pos = [variables.index(v) for v in self.variables]
        out = {}
        for e, c in self.terms.items():
            full = [0] * len(variables)
            for p, x in zip(pos, e):
                full[p] = x
            out[tuple(full)] = c
        return out

    def _align(self, other: "MultiPoly"):
        if self.variables == other.variables:
            return self.variables, self.terms, other.terms
        names = tuple(sorted(set(self.variables) | set(other.variables), key=_var_key))
        return names, self._with_vars(names), other._with_vars(names)

    def simplify(self) -> "MultiPoly":
        """Drop unused variables and sort the rest."""
        used = [i for i in range(len(self.variables)) if any(e[i] for e in self.terms)]
        order = sorted(used, key=lambda i: _var_key(self.variables[i]))
        names = tuple(self.variables[i] for i in order)
        return MultiPoly(names, {tuple(e[i] for i in order): c for e, c in self.terms.items()})

    def __add__(self, other):
        other = _lift(other)
        names, a, b = self._align(other)
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(names, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        names, a, b = self._align(other)
        return MultiPoly(names, _mul(a, b))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        _, a, b = self._align(other)
        return a == b

    def __hash__(self):
        s = self.simplify()
        return hash((s.variables, frozenset(s.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def evaluate(self, values: dict) -> int:
        total = 0
        for e, c in self.terms.items():
            term = c
            for name, x in zip(self.variables, e):
                if x:
                    term *= values[name] ** x
            total += term
        return total

    def rename(self, mapping: dict) -> "MultiPoly":
        names = tuple(mapping.get(v, v) for v in self.variables)
        if len(set(names)) != len(names):
            raise ValueError("renaming merges variables")
        return MultiPoly(names, self.terms).simplify()

    def sorted_terms(self) -> list[tuple[int, tuple[tuple[str, int], ...]]]:
        """Terms in graded lexicographic order (largest first)."""
        s = self.simplify()
        items = sorted(s.terms.items(), key=lambda ec: (sum(ec[0]), tuple(ec[0])), reverse=True)
        return [(c, tuple((v, x) for v, x in zip(s.variables, e) if x)) for e, c in items]

    def term_map(self) -> dict:
        return {mono: c for c, mono in self.sorted_terms()}

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, mono in self.sorted_terms():
            m = "*".join(v if x == 1 else f"{v}^{x}" for v, x in mono)
            if not m:
                parts.append(str(c))
            elif c == 1:
                parts.append(m)
            elif c == -1:
                parts.append("-" + m)
            else:
                parts.append(f"{c}*{m}")
        return " + ".join(parts).replace("+ -", "- ")

    def lines(self) -> list[str]:
        """One ``coef monomial`` line per term, graded lex order."""
        out = []
        for c, mono in self.sorted_terms():
            m = "*".join(v if x == 1 else f"{v}^{x}" for v, x in mono) or "1"
            out.append(f"{c} {m}")
        return out


def _lift(x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, int):
        return MultiPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def divide_exact(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """Quotient of an exact division; ArithmeticError if there is a remainder."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    names, a, b = num._align(den)
    key = lambda e: (sum(e), e)
    lead_e = max(b, key=key)
    lead_c = b[lead_e]
    rest = dict(a)
    quot = {}
    while rest:
        e = max(rest, key=key)
        c = rest[e]
        shift = tuple(x - y for x, y in zip(e, lead_e))
        if min(shift, default=0) < 0 or c % lead_c:
            raise ArithmeticError("polynomial division is not exact")
        qc = c // lead_c
        quot[shift] = qc
        for eb, cb in b.items():
            t = tuple(x + y for x, y in zip(shift, eb))
            v = rest.get(t, 0) - qc * cb
            if v:
                rest[t] = v
            else:
                rest.pop(t, None)
    return MultiPoly(names, quot)


@dataclass
class UniPolySym:
    """``c_0 + c_1 x + ... + c_h x^h`` with polynomial coefficients."""

    coeffs: list

    def __post_init__(self):
        self.coeffs = [_lift(c) for c in self.coeffs]
        if not self.coeffs or self.coeffs[-1].is_zero():
            raise ValueError("leading coefficient must be nonzero")

    @classmethod
    def generic(cls, names: Sequence[str]) -> "UniPolySym":
        return cls([MultiPoly.var(n) for n in names])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self) -> "UniPolySym":
        if self.degree == 0:
            raise ValueError("derivative of a constant")
        return UniPolySym([j * c for j, c in enumerate(self.coeffs) if j])

    def __mul__(self, other: "UniPolySym") -> "UniPolySym":
        out = [MultiPoly.const(0) for _ in range(self.degree + other.degree + 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPolySym(out)

    def substitute(self, values: dict) -> list[int]:
        return [c.evaluate(values) for c in self.coeffs]


def sylvester_matrix(f: UniPolySym, g: UniPolySym) -> list[list[MultiPoly]]:
    """Rows of ``f`` coefficients (ascending, shifted) then rows of ``g``."""
    m, n = f.degree, g.degree
    size = m + n
    zero = MultiPoly.const(0)
    rows = []
    for shift in range(n):
        rows.append([zero] * shift + list(f.coeffs) + [zero] * (size - m - 1 - shift))
    for shift in range(m):
        rows.append([zero] * shift + list(g.coeffs) + [zero] * (size - n - 1 - shift))
    return rows


def poly_det(m: list[list[MultiPoly]]) -> MultiPoly:
    """Determinant by memoised cofactor expansion along rows."""
    size = len(m)
    if size == 0:
        return MultiPoly.const(1)
    names = tuple(sorted({v for row in m for e in row for v in e.variables}, key=_var_key))
    # banded matrices share far more minors when rows are taken by leading column
    lead = [next((c for c, e in enumerate(row) if not e.is_zero()), size) for row in m]
    order = sorted(range(size), key=lambda r: lead[r])
    parity = sum(1 for i, j in combinations(range(size), 2) if order[i] > order[j]) % 2
    raw = [[e._with_vars(names) for e in m[r]] for r in order]
    memo: dict = {}

    def minor(r: int, used: int) -> dict:
        if r == size:
            return {(0,) * len(names): 1}
        key = (r, used)
        if key in memo:
            return memo[key]
        out: dict = {}
        free = 0
        for c in range(size):
            if used >> c & 1:
                continue
            entry = raw[r][c]
            if entry:
                sub = minor(r + 1, used | 1 << c)
                if sub:
                    sign = -1 if free % 2 else 1
                    for e, v in _mul(entry, sub).items():
                        out[e] = out.get(e, 0) + sign * v
            free += 1
        out = {e: v for e, v in out.items() if v}
        memo[key] = out
        return out

    out = minor(0, 0)
    if parity:
        out = {e: -v for e, v in out.items()}
    return MultiPoly(names, out)


def _resultant(f: UniPolySym, g: UniPolySym) -> MultiPoly:
    return poly_det(sylvester_matrix(f, g))


def resultant(f: UniPolySym, g: UniPolySym) -> MultiPoly:
    """Sylvester resultant with ascending coefficient rows, so that
    ``Res(a1 + b1 x, a2 + b2 x) = a1 b2 - a2 b1``."""
    if f.degree < 1 or g.degree < 1:
        raise ValueError("resultant needs polynomials of degree >= 1")
    return _resultant(f, g)


def discriminant(f: UniPolySym) -> MultiPoly:
    """``Res(f, f') / lc(f)``; equals ``4 a c - b^2`` for ``a + b x + c x^2`` and 1 for linear ``f``."""
    if f.degree < 1:
        raise ValueError("discriminant needs degree >= 1")
    try:
        return divide_exact(_resultant(f, f.derivative()), f.coeffs[-1]).simplify()
    except ArithmeticError as exc:
        raise RuntimeError("resultant not divisible by the leading coefficient") from exc


def coefficient_name(i: int, j: int) -> str:
    return f"a{i}_{j}"


def prism_polynomials(h: Sequence[int]) -> list[UniPolySym]:
    return [UniPolySym.generic([coefficient_name(i, j) for j in range(hi + 1)]) for i, hi in enumerate(h)]


@dataclass
class FactoredPoly:
    """Product of polynomial factors, kept unexpanded."""

    factors: list = field(default_factory=list)

    def expand(self) -> MultiPoly:
        out = MultiPoly.const(1)
        for f in self.factors:
            out = out * f
        return out.simplify()

    def total_degree(self) -> int:
        # exact: the top-degree parts of nonzero factors multiply to a nonzero form
        if any(f.is_zero() for f in self.factors):
            return -1
        return sum(f.total_degree() for f in self.factors)

    def evaluate(self, values: dict) -> int:
        out = 1
        for f in self.factors:
            out *= f.evaluate(values)
        return out


def principal_adet_prism(h: Sequence[int]) -> FactoredPoly:
    """Principal A-determinant of the Lawrence prism with heights ``h``, as
    boundary coefficients times discriminants times pairwise resultants."""
    h = [int(x) for x in h]
    if not h or any(x < 1 for x in h):
        raise ValueError("all heights must be at least 1")
    factors = []
    for i, hi in enumerate(h):
        factors.append(MultiPoly.var(coefficient_name(i, 0)))
        factors.append(MultiPoly.var(coefficient_name(i, hi)))
    for i, hi in enumerate(h):
        if hi > 1:
            factors.append(_generic_discriminant(hi).rename({f"u{j}": coefficient_name(i, j) for j in range(hi + 1)}))
    for i, j in combinations(range(len(h)), 2):
        names = {f"u{k}": coefficient_name(i, k) for k in range(h[i] + 1)}
        names.update({f"w{k}": coefficient_name(j, k) for k in range(h[j] + 1)})
        factors.append(_generic_resultant(h[i], h[j]).rename(names))
    return FactoredPoly(factors)


@lru_cache(maxsize=None)
def _generic_discriminant(m: int) -> MultiPoly:
    return discriminant(UniPolySym.generic([f"u{j}" for j in range(m + 1)]))


@lru_cache(maxsize=None)
def _generic_resultant(m: int, n: int) -> MultiPoly:
    return resultant(UniPolySym.generic([f"u{j}" for j in range(m + 1)]),
                     UniPolySym.generic([f"w{j}" for j in range(n + 1)]))


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def parse_poly(text: str) -> MultiPoly:
    """Parse products and sums such as ``a0 b1 (4 a0 b0 - c0^2)``; juxtaposition multiplies."""
    text = text.replace("−", "-")
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, name, sym = m.groups()
        tokens.append(("num", int(num)) if num else ("var", name) if name else ("sym", sym))
        pos = m.end()
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take(expected=None):
        nonlocal i
        tok = tokens[i]
        if expected is not None and tok != ("sym", expected):
            raise ValueError(f"expected {expected!r}, got {tok[1]!r}")
        i += 1
        return tok

    def expr():
        sign = 1
        if peek() in (("sym", "+"), ("sym", "-")):
            sign = -1 if take()[1] == "-" else 1
        out = sign * term()
        while peek() in (("sym", "+"), ("sym", "-")):
            op = take()[1]
            t = term()
            out = out + t if op == "+" else out - t
        return out

    def term():
        out = factor()
        while True:
            if peek() == ("sym", "*"):
                take()
                out = out * factor()
            elif peek()[0] in ("num", "var") or peek() == ("sym", "("):
                out = out * factor()
            else:
                return out

    def factor():
        base = atom()
        if peek() == ("sym", "^"):
            take()
            kind, k = take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            base = base ** k
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return MultiPoly.const(val)
        if kind == "var":
            return MultiPoly.var(val)
        if val == "(":
            out = expr()
            take(")")
            return out
        raise ValueError(f"unexpected token {val!r}")

    out = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input at {peek()[1]!r}")
    return out.simplify()


WORKED_HEIGHTS = (1, 1, 2)
WORKED_EXPANSION = ("a0 a1 a2 b0 b1 b2 (4 a0 b0 - c0^2) (a1 b2 - a2 b1) "
                    "(a1^2 b0 + b1^2 a0 - a1 b1 c0) (a2^2 b0 + b2^2 a0 - a2 b2 c0)")
# linear f_0, f_1 use (a1, b1), (a2, b2); the quadratic f_2 uses (a0, c0, b0)
WORKED_ASSIGNMENT = {
    coefficient_name(0, 0): "a1", coefficient_name(0, 1): "b1",
    coefficient_name(1, 0): "a2", coefficient_name(1, 1): "b2",
    coefficient_name(2, 0): "a0", coefficient_name(2, 1): "c0", coefficient_name(2, 2): "b0",
}


@dataclass
class ExampleReport:
    match: bool
    sign: int
    assignment: dict
    only_formula: dict
    only_printed: dict

    def to_dict(self) -> dict:
        out = {"match": self.match, "sign": self.sign, "assignment": self.assignment}
        if not self.match:
            fmt = lambda d: {"*".join(f"{v}^{x}" if x > 1 else v for v, x in m): c for m, c in d.items()}
            out["only_formula"] = fmt(self.only_formula)
            out["only_printed"] = fmt(self.only_printed)
        return out


def worked_example_report(printed: str = WORKED_EXPANSION) -> ExampleReport:
    """Compare the expanded product formula for heights (1, 1, 2) with ``printed``,
    allowing one global sign."""
    formula = principal_adet_prism(WORKED_HEIGHTS).expand().rename(WORKED_ASSIGNMENT)
    target = parse_poly(printed)
    a = formula.term_map()
    best = None
    for sign in (1, -1):
        b = {m: sign * c for m, c in target.term_map().items()}
        only_a = {m: c for m, c in a.items() if b.get(m) != c}
        only_b = {m: c for m, c in b.items() if a.get(m) != c}
        rep = ExampleReport(not only_a and not only_b, sign, dict(WORKED_ASSIGNMENT), only_a, only_b)
        if rep.match:
            return rep
        if best is None or len(only_a) + len(only_b) < len(best.only_formula) + len(best.only_printed):
            best = rep
    return best


def verify_worked_example(printed: str = WORKED_EXPANSION) -> bool:
    return worked_example_report(printed).match


def random_substitution_check(seed: int = 0, printed: str = WORKED_EXPANSION, trials: int = 5) -> bool:
    """Evaluate both sides of the worked example at seeded random integers."""
    rng = random.Random(seed)
    formula = principal_adet_prism(WORKED_HEIGHTS)
    target = parse_poly(printed)
    sign = worked_example_report(printed).sign
    for _ in range(trials):
        values = {v: rng.randint(-9, 9) for v in WORKED_ASSIGNMENT.values()}
        left = formula.evaluate({k: values[v] for k, v in WORKED_ASSIGNMENT.items()})
        if left != sign * target.evaluate(values):
            return False
    return True
