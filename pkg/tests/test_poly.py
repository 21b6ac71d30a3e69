"""Polynomial core: monomial bases, arithmetic, Chebyshev family, text format."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from milnor.monomials import Monomial, monomial_index, monomials_of_degree, num_monomials
from milnor.poly import (
    SparsePolynomial,
    chebyshev_poly,
    dehomogenize,
    format_polynomial,
    homogenize,
    parse_polynomial,
    partial_derivatives,
)


def random_poly(rng, num_vars, max_degree, num_terms, rational=False):
    terms = {}
    for _ in range(num_terms):
        mono = tuple(rng.randint(0, max_degree) for _ in range(num_vars))
        if rational:
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        else:
            c = rng.randint(-9, 9)
        if c:
            terms[mono] = terms.get(mono, 0) + c
    return SparsePolynomial(num_vars, terms)


# -- monomial bases ----------------------------------------------------------


def test_monomial_count_matches_binomial():
    for num_vars in range(1, 6):
        for k in range(0, 7):
            monos = monomials_of_degree(num_vars, k)
            assert len(monos) == math.comb(num_vars - 1 + k, k)
            assert len(monos) == num_monomials(num_vars, k)
            assert all(m.degree == k for m in monos)
            assert len(set(monos)) == len(monos)


def test_monomial_order_graded_lex_descending():
    monos = monomials_of_degree(3, 2)
    assert monos[0] == (2, 0, 0)
    assert monos[-1] == (0, 0, 2)
    assert list(monos) == sorted(monos, reverse=True)
    index = monomial_index(3, 2)
    assert [index[m] for m in monos] == list(range(len(monos)))


def test_monomial_product_and_divides():
    a = Monomial((1, 0, 2))
    b = Monomial((0, 3, 1))
    assert a * b == (1, 3, 3)
    assert (a * b).degree == 7
    assert a.divides(a * b)
    assert not b.divides(a)


# -- ring operations ---------------------------------------------------------


def test_ring_axioms_on_random_polynomials():
    rng = random.Random(7)
    for _ in range(60):
        num_vars = rng.randint(1, 4)
        f = random_poly(rng, num_vars, 3, 4)
        g = random_poly(rng, num_vars, 3, 4)
        h = random_poly(rng, num_vars, 3, 4)
        assert f + g == g + f
        assert (f + g) + h == f + (g + h)
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f - f == SparsePolynomial.zero(num_vars)
        assert f * SparsePolynomial.constant(num_vars, 1) == f
        assert (f * SparsePolynomial.zero(num_vars)).is_zero


def test_rational_coefficients_stay_exact():
    f = parse_polynomial("1/3*x0^2 + 1/6*x0^2 - 1/2*x0^2")
    assert f.is_zero
    g = parse_polynomial("2/4*x0")
    assert g.terms[Monomial((1,))] == Fraction(1, 2)


def test_no_zero_coefficients_survive():
    rng = random.Random(11)
    for _ in range(40):
        f = random_poly(rng, 3, 3, 5)
        g = random_poly(rng, 3, 3, 5)
        for p in (f + g, f - g, f * g):
            assert all(c for c in p.terms.values())


def test_power_matches_repeated_multiplication():
    f = parse_polynomial("x0 + x1", num_vars=2)
    assert f**3 == f * f * f
    assert f**0 == SparsePolynomial.constant(2, 1)


def test_evaluate_and_substitute():
    f = parse_polynomial("x0^2*x1 - 2*x1 + 5")
    assert f.evaluate([3, 2]) == 9 * 2 - 4 + 5
    g = f.substitute({0: 3})
    assert g == parse_polynomial("9*x1 - 2*x1 + 5", num_vars=2)


# -- calculus and homogenization ----------------------------------------------


def test_partial_derivative_product_rule():
    rng = random.Random(3)
    for _ in range(30):
        f = random_poly(rng, 3, 3, 4)
        g = random_poly(rng, 3, 3, 4)
        for i in range(3):
            lhs = (f * g).partial_derivative(i)
            rhs = f.partial_derivative(i) * g + f * g.partial_derivative(i)
            assert lhs == rhs


def test_euler_identity_for_homogeneous_gradient():
    rng = random.Random(5)
    for _ in range(20):
        num_vars = rng.randint(2, 4)
        d = rng.randint(2, 5)
        monos = monomials_of_degree(num_vars, d)
        f = SparsePolynomial(
            num_vars, {m: rng.randint(-5, 5) for m in rng.sample(monos, min(4, len(monos)))}
        )
        if f.is_zero:
            continue
        grad = partial_derivatives(f, d)
        euler = SparsePolynomial.zero(num_vars)
        for i, fi in enumerate(grad):
            euler = euler + SparsePolynomial.variable(num_vars, i) * fi
        assert euler == d * f


def test_partial_derivatives_requires_homogeneous():
    f = parse_polynomial("x0^2 + x1")
    with pytest.raises(ValueError):
        partial_derivatives(f, 2)


def test_homogenize_round_trip():
    g = parse_polynomial("8*x1^4 - 8*x1^2 + 1", num_vars=2)
    f = homogenize(g, 4)
    assert f.is_homogeneous and f.degree == 4
    assert format_polynomial(f) == "8*x1^4 - 8*x1^2*x0^2 + x0^4"
    assert dehomogenize(f) == g


def test_homogenize_rejects_bad_input():
    with pytest.raises(ValueError):
        homogenize(parse_polynomial("x0 + x1"), 3)  # uses the homogenizing variable
    with pytest.raises(ValueError):
        homogenize(parse_polynomial("x1^4", num_vars=2), 3)  # degree too high


def test_homogenize_sum_of_chebyshev():
    t4 = chebyshev_poly(4)
    g = t4.embed(3, {0: 1}) + t4.embed(3, {0: 2})
    f = homogenize(g, 4)
    assert (
        format_polynomial(f)
        == "8*x2^4 - 8*x2^2*x0^2 + 8*x1^4 - 8*x1^2*x0^2 + 2*x0^4"
    )


# -- Chebyshev ----------------------------------------------------------------


def test_chebyshev_small_values():
    assert format_polynomial(chebyshev_poly(0)) == "1"
    assert format_polynomial(chebyshev_poly(1)) == "x0"
    assert format_polynomial(chebyshev_poly(2)) == "2*x0^2 - 1"
    assert format_polynomial(chebyshev_poly(3)) == "4*x0^3 - 3*x0"
    assert format_polynomial(chebyshev_poly(4)) == "8*x0^4 - 8*x0^2 + 1"


def test_chebyshev_structure():
    for d in range(1, 16):
        td = chebyshev_poly(d)
        assert td.degree == d
        assert td.terms[Monomial((d,))] == 2 ** (d - 1)
        assert Monomial((d - 1,)) not in td.terms
        # parity: T_d(-x) = (-1)^d T_d(x)
        assert all((d - e[0]) % 2 == 0 for e in td.terms)


def test_chebyshev_cosine_identity():
    # T_d(cos t) = cos(d t) at a handful of angles
    for d in range(0, 12):
        td = chebyshev_poly(d)
        for t in (0.0, 0.3, 1.1, 2.5):
            assert abs(td.evaluate([math.cos(t)]) - math.cos(d * t)) < 1e-9


def test_chebyshev_endpoint_values():
    for d in range(0, 12):
        td = chebyshev_poly(d)
        assert td.evaluate([1]) == 1
        assert td.evaluate([-1]) == (-1) ** d


# -- text format ---------------------------------------------------------------


def test_format_examples():
    p = SparsePolynomial(2, {(4, 0): 2, (2, 2): -8, (0, 4): 8})
    assert format_polynomial(p) == "8*x1^4 - 8*x1^2*x0^2 + 2*x0^4"
    assert format_polynomial(SparsePolynomial.zero(2)) == "0"
    assert format_polynomial(parse_polynomial("-x0 + 1")) == "-x0 + 1"


def test_parse_whitespace_insensitive():
    a = parse_polynomial("8*x1^4 - 8*x1^2*x0^2 + 2*x0^4")
    b = parse_polynomial("8*x1^4-8*x1^2*x0^2+2*x0^4")
    c = parse_polynomial("  8 * x1^4   -8*  x1 ^ 2 * x0 ^2 + 2*x0^4 ")
    assert a == b == c


def test_parse_defaults_and_merging():
    p = parse_polynomial("x0*x0 + x0^2", num_vars=1)
    assert p.terms[Monomial((2,))] == 2
    q = parse_polynomial("3", num_vars=2)
    assert q == SparsePolynomial.constant(2, 3)
    assert parse_polynomial("x2").num_vars == 3


def test_parse_rejects_garbage():
    for bad in ("x0 + + x1", "4*", "x0^", "1/0*x0", "y0", "x0 x1", "", "3/"):
        with pytest.raises(ValueError):
            parse_polynomial(bad)


def test_round_trip_random():
    rng = random.Random(23)
    for _ in range(80):
        num_vars = rng.randint(1, 4)
        p = random_poly(rng, num_vars, 4, 5, rational=rng.random() < 0.5)
        again = parse_polynomial(format_polynomial(p), num_vars=num_vars)
        assert again == p
