"""Exact substrate: Laurent polynomials, truncated series, rational hygiene."""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jetred.exact import (
    LaurentPolynomial,
    PointedSeries,
    TruncatedSeries,
    grlex_key,
    series_compose,
    series_mul,
    series_reciprocal_shifted,
)

VARS = ("u1", "u2", "u3")


def var(name):
    return LaurentPolynomial.variable(VARS, name)


def const(q):
    return LaurentPolynomial.constant(VARS, q)


coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=9)
exponents = st.tuples(st.integers(-3, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.builds(
    lambda terms: LaurentPolynomial(VARS, terms),
    st.dictionaries(exponents, coefficients, max_size=4),
)


def frac_series(order):
    return st.lists(coefficients, min_size=order, max_size=order).map(TruncatedSeries)


series_triples = st.integers(min_value=1, max_value=8).flatmap(
    lambda k: st.tuples(frac_series(k), frac_series(k), frac_series(k))
)


class TestLaurentPolynomial:
    def test_additive_inverse(self):
        assert var("u1") + (-var("u1")) == const(0)

    def test_designated_invertible_cancellation(self):
        assert var("u1").inverse() * var("u1") == const(1)

    def test_w3_second_term_path(self):
        # (u2 / (2 u1))^2 scaled by 6/u1^2 gives the 3/2 * u2^2 * u1^-4 term
        half_ratio = var("u2") / (2 * var("u1"))
        term = 6 * half_ratio * half_ratio / (var("u1") ** 2)
        expected = LaurentPolynomial(VARS, {(-4, 2, 0): Fraction(3, 2)})
        assert term == expected

    def test_variable_list_mismatch(self):
        other = LaurentPolynomial.variable(("a", "b"), "a")
        with pytest.raises(ValueError, match="variable lists differ"):
            var("u1") + other

    def test_negative_exponent_rejected_for_noninvertible(self):
        with pytest.raises(ValueError, match="non-invertible"):
            LaurentPolynomial(VARS, {(0, -1, 0): Fraction(1)})
        with pytest.raises(ValueError, match="cannot invert"):
            var("u2").inverse()

    def test_inverse_requires_monomial(self):
        with pytest.raises(ValueError, match="single-term"):
            (var("u1") + const(1)).inverse()

    def test_pow_negative_through_inverse(self):
        assert var("u1") ** -3 == var("u1").inverse() ** 3

    def test_derivative_and_evaluate(self):
        p = var("u1") ** -2 * var("u2")
        dp = p.derivative("u1")
        assert dp == LaurentPolynomial(VARS, {(-3, 1, 0): Fraction(-2)})
        value = p.evaluate({"u1": Fraction(2), "u2": Fraction(3), "u3": Fraction(0)})
        assert value == Fraction(3, 4)

    def test_structural_equality_ignores_construction_order(self):
        p = var("u1") + var("u2")
        q = var("u2") + var("u1")
        assert p == q and hash(p) == hash(q)

    @settings(max_examples=200, deadline=None)
    @given(polys, polys, polys)
    def test_ring_axioms(self, p, q, r):
        assert (p + q) + r == p + (q + r)
        assert p + q == q + p
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r
        assert p + (-p) == const(0)

    @settings(max_examples=200, deadline=None)
    @given(polys, polys)
    def test_coefficients_stay_canonical(self, p, q):
        for poly in (p + q, p * q, p - q):
            for coeff in poly.terms.values():
                assert coeff != 0
                assert coeff.denominator > 0
                assert gcd(coeff.numerator, coeff.denominator) == 1


class TestPrinting:
    def test_grlex_descending_order(self):
        p = LaurentPolynomial(
            VARS, {(-3, 0, 1): Fraction(1), (-4, 2, 0): Fraction(-3, 2)}
        )
        assert str(p) == "u1^-3*u3 - 3/2*u1^-4*u2^2"

    def test_unit_coefficients_and_constants(self):
        assert str(const(0)) == "0"
        assert str(-var("u1")) == "-u1"
        assert str(var("u2") + const(Fraction(1, 3))) == "u2 + 1/3"

    def test_grlex_key_orders_by_degree_then_lex(self):
        assert grlex_key((1, 0, 0)) < grlex_key((0, 2, 0))
        assert grlex_key((-4, 2, 0)) < grlex_key((-3, 0, 1))


class TestSeries:
    def test_mul_basic(self):
        z = TruncatedSeries([Fraction(1), Fraction(0), Fraction(0)])
        assert series_mul(z, z).coefficients == (0, 1, 0)

    def test_mul_truncates(self):
        s = TruncatedSeries([Fraction(1), Fraction(1)])
        assert series_mul(s, s).coefficients == (0, 1)

    def test_mul_derived_example(self):
        s = TruncatedSeries([Fraction(1), Fraction(-1), Fraction(1)])
        t = TruncatedSeries([Fraction(1), Fraction(1), Fraction(0)])
        assert series_mul(s, t).coefficients == (0, 1, 0)

    def test_compose_identity_outer(self):
        outer = TruncatedSeries([Fraction(1), Fraction(0), Fraction(0)])
        inner = TruncatedSeries([Fraction(2), Fraction(-1), Fraction(3)])
        assert series_compose(outer, inner) == inner

    def test_compose_square(self):
        outer = TruncatedSeries([Fraction(0), Fraction(1), Fraction(0)])
        inner = TruncatedSeries([Fraction(1), Fraction(1), Fraction(0)])
        assert series_compose(outer, inner).coefficients == (0, 1, 2)

    def test_compose_inverse_function_jets(self):
        # exp(z)-1 and log(1+z) are mutually inverse; jets compose to z
        exp_jet = TruncatedSeries([Fraction(1), Fraction(1, 2), Fraction(1, 6)])
        log_jet = TruncatedSeries([Fraction(1), Fraction(-1, 2), Fraction(1, 3)])
        assert series_compose(exp_jet, log_jet).coefficients == (1, 0, 0)

    def test_order_mismatch(self):
        with pytest.raises(ValueError, match="order mismatch"):
            series_mul(TruncatedSeries([Fraction(1)]), TruncatedSeries([Fraction(1), Fraction(0)]))

    def test_reciprocal_trivial(self):
        out = series_reciprocal_shifted(Fraction(1), TruncatedSeries([Fraction(0)] * 3))
        assert out.value == 1 and out.tail.coefficients == (0, 0, 0)

    def test_reciprocal_geometric(self):
        out = series_reciprocal_shifted(
            Fraction(1), TruncatedSeries([Fraction(1), Fraction(0), Fraction(0)])
        )
        assert out == PointedSeries(Fraction(1), TruncatedSeries([Fraction(-1), Fraction(1), Fraction(-1)]))

    def test_reciprocal_shifted_constant(self):
        out = series_reciprocal_shifted(Fraction(2), TruncatedSeries([Fraction(1), Fraction(0)]))
        assert out.value == Fraction(1, 2)
        assert out.tail.coefficients == (Fraction(-1, 4), Fraction(1, 8))

    def test_reciprocal_rejects_zero_constant(self):
        with pytest.raises(ValueError, match="not invertible"):
            series_reciprocal_shifted(Fraction(0), TruncatedSeries([Fraction(1)]))

    @settings(max_examples=150, deadline=None)
    @given(series_triples)
    def test_compose_associativity(self, triple):
        f, g, h = triple
        left = series_compose(series_compose(f, g), h)
        right = series_compose(f, series_compose(g, h))
        assert left == right

    @settings(max_examples=150, deadline=None)
    @given(series_triples, st.integers(min_value=1, max_value=8))
    def test_truncation_consistency(self, triple, j):
        f, g, _ = triple
        if j > f.order:
            j = f.order
        full = series_compose(f, g).truncate(j)
        short = series_compose(f.truncate(j), g.truncate(j))
        assert full == short
