import random
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from latdeg.adet import (MultiPoly, UniPolySym, WORKED_EXPANSION, coefficient_name, discriminant, parse_poly,
                         principal_adet_prism, random_substitution_check, resultant, verify_worked_example,
                         worked_example_report)

X = sympy.Symbol("x")
a1, b1, a2, b2, a0, b0, c0 = (MultiPoly.var(n) for n in ("a1", "b1", "a2", "b2", "a0", "b0", "c0"))

int_poly = st.lists(st.integers(-5, 5), min_size=2, max_size=4).filter(lambda c: c[-1] != 0)


def numeric(coeffs):
    return UniPolySym([MultiPoly.const(c) for c in coeffs])


def value(p: MultiPoly) -> int:
    return p.evaluate({})


def as_sympy(coeffs):
    return sum(c * X ** j for j, c in enumerate(coeffs))


def test_linear_resultant():
    f, g = UniPolySym([a1, b1]), UniPolySym([a2, b2])
    assert resultant(f, g) == a1 * b2 - a2 * b1


def test_quadratic_linear_resultant():
    f, g = UniPolySym([a0, c0, b0]), UniPolySym([a1, b1])
    assert resultant(f, g) == a1 ** 2 * b0 + b1 ** 2 * a0 - a1 * b1 * c0


def test_resultant_with_itself_vanishes():
    for names in (["u0", "u1"], ["u0", "u1", "u2"]):
        f = UniPolySym.generic(names)
        assert resultant(f, f).is_zero()


def test_degree_zero_rejected():
    with pytest.raises(ValueError):
        resultant(numeric([3]), numeric([1, 1]))
    with pytest.raises(ValueError):
        discriminant(numeric([3]))
    with pytest.raises(ValueError):
        UniPolySym([MultiPoly.const(1), MultiPoly.const(0)])


def test_discriminants():
    assert discriminant(UniPolySym([a0, c0, b0])) == 4 * a0 * b0 - c0 ** 2
    assert discriminant(UniPolySym([a1, b1])) == MultiPoly.const(1)
    p, q = MultiPoly.var("p"), MultiPoly.var("q")
    cubic = discriminant(UniPolySym([q, p, MultiPoly.const(0), MultiPoly.const(1)]))
    assert cubic == 4 * p ** 3 + 27 * q ** 2


@pytest.mark.parametrize("roots", [(0, 1, 2), (1, -1, 3), (2, 2, 5), (-3, 0, 4), (1, 2, 3, -2)])
def test_discriminant_matches_root_differences(roots):
    coeffs = [int(c) for c in reversed(sympy.Poly(sympy.prod([X - r for r in roots]), X).all_coeffs())]
    h = len(roots)
    by_roots = 1
    for r, s in combinations(roots, 2):
        by_roots *= (r - s) ** 2
    assert value(discriminant(numeric(coeffs))) == (-1) ** (h * (h - 1) // 2) * by_roots


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=3), st.sampled_from([1, -1, 2, 3]), int_poly)
def test_resultant_matches_root_product(roots, lead, g):
    # textbook resultant: lc(f)^deg(g) * prod of g over the roots of f
    f = [lead * int(c) for c in reversed(sympy.Poly(sympy.prod([X - r for r in roots]), X).all_coeffs())]
    m, n = len(roots), len(g) - 1
    textbook = lead ** n
    for r in roots:
        textbook *= sum(c * r ** j for j, c in enumerate(g))
    assert value(resultant(numeric(f), numeric(g))) == (-1) ** (m * n) * textbook
    assert value(resultant(numeric(g), numeric(f))) == textbook


@settings(max_examples=60, deadline=None)
@given(int_poly)
def test_discriminant_matches_sympy_up_to_degree_sign(f):
    h = len(f) - 1
    expected = sympy.discriminant(as_sympy(f), X) if h > 1 else 1
    assert value(discriminant(numeric(f))) == (-1) ** (h * (h - 1) // 2) * expected


@settings(max_examples=60, deadline=None)
@given(st.integers(-4, 4), st.lists(st.integers(-3, 3), min_size=1, max_size=3),
       st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_planted_common_root_gives_zero(r, f_rest, g_rest):
    # multiply arbitrary nonzero polynomials by (x - r)
    def with_root(rest):
        rest = rest if rest[-1] else rest[:-1] + [1]
        return [(rest[j - 1] if j else 0) - r * (rest[j] if j < len(rest) else 0) for j in range(len(rest) + 1)]
    assert value(resultant(numeric(with_root(f_rest)), numeric(with_root(g_rest)))) == 0


@settings(max_examples=60, deadline=None)
@given(int_poly, int_poly, int_poly)
def test_resultant_is_multiplicative(f, g, h):
    ff, gg, hh = numeric(f), numeric(g), numeric(h)
    assert value(resultant(ff * gg, hh)) == value(resultant(ff, hh)) * value(resultant(gg, hh))
    assert value(resultant(hh, ff * gg)) == value(resultant(hh, ff)) * value(resultant(hh, gg))


def test_principal_adet_of_square():
    v = {(i, j): MultiPoly.var(coefficient_name(i, j)) for i in range(2) for j in range(2)}
    expected = v[0, 0] * v[0, 1] * v[1, 0] * v[1, 1] * (v[0, 0] * v[1, 1] - v[1, 0] * v[0, 1])
    e = principal_adet_prism((1, 1))
    assert e.expand() == expected
    assert e.total_degree() == 6


@pytest.mark.parametrize("h", [(1,), (2,), (3,), (1, 2), (2, 2), (1, 1, 1), (2, 1, 1), (3, 1)])
def test_expanded_degree(h):
    e = principal_adet_prism(h)
    assert e.expand().total_degree() == e.total_degree() == (len(h) + 1) * sum(h)


def test_factored_degree_for_larger_heights():
    for h in [(4, 4), (2, 3, 3), (1, 1, 1, 5)]:
        assert principal_adet_prism(h).total_degree() == (len(h) + 1) * sum(h)


def test_zero_height_rejected():
    with pytest.raises(ValueError):
        principal_adet_prism((1, 0))
    with pytest.raises(ValueError):
        principal_adet_prism(())


def test_factored_evaluation_matches_expansion():
    e = principal_adet_prism((2, 1))
    rng = random.Random(1)
    names = [coefficient_name(0, j) for j in range(3)] + [coefficient_name(1, j) for j in range(2)]
    for _ in range(5):
        vals = {n: rng.randint(-5, 5) for n in names}
        assert e.evaluate(vals) == e.expand().evaluate(vals)


def test_worked_example():
    rep = worked_example_report()
    assert rep.match and rep.sign == 1
    assert verify_worked_example()
    assert rep.assignment[coefficient_name(2, 1)] == "c0"
    assert random_substitution_check(seed=0)
    assert random_substitution_check(seed=123, trials=20)


def test_worked_example_detects_mutations():
    assert not verify_worked_example(WORKED_EXPANSION.replace("4 a0 b0", "3 a0 b0"))
    assert not verify_worked_example(WORKED_EXPANSION.replace("a1 b1 c0", "a1 b2 c0"))
    assert not random_substitution_check(printed=WORKED_EXPANSION.replace("4 a0 b0", "5 a0 b0"))
    rep = worked_example_report(WORKED_EXPANSION.replace("4 a0 b0", "3 a0 b0"))
    assert "only_formula" in rep.to_dict()


def test_global_sign_is_allowed():
    rep = worked_example_report("-" + "(" + WORKED_EXPANSION + ")")
    assert rep.match and rep.sign == -1


def test_parse_poly():
    assert parse_poly("2 x^2 y - 3") == 2 * MultiPoly.var("x") ** 2 * MultiPoly.var("y") - 3
    assert parse_poly("(a + b)(a − b)") == parse_poly("a^2 - b^2")
    assert parse_poly("a*b") == parse_poly("a b")
    for bad in ["(a + b", "a ^", "a + + ", "a $ b"]:
        with pytest.raises(ValueError):
            parse_poly(bad)


def test_lines_are_graded_lex():
    assert parse_poly("x + x^2 y + 3 - y").lines() == ["1 x^2*y", "1 x", "-1 y", "3 1"]
    assert principal_adet_prism((1, 1)).expand().lines() == ["1 a0_0^2*a0_1*a1_0*a1_1^2",
                                                              "-1 a0_0*a0_1^2*a1_0^2*a1_1"]
