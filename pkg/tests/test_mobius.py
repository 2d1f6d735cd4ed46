"""Univariate jet invariants: actions, projections, symbol family, operators."""

from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from jetred.errors import DomainError, InvariantSubspaceError
from jetred.exact import LaurentPolynomial, TruncatedSeries
from jetred.mobius import (
    Mobius,
    MobiusStabilizer,
    canonical_projection,
    canonical_representative,
    derivatives_from_jet,
    eval_D1,
    eval_D2,
    jet_from_derivatives,
    mobius_jet,
    mobius_jet_at,
    pullback_jet,
    stabilizer_action,
    symbolic_invariants,
)
from jetred.verify import check_mobius_invariance, check_mobius_rank


def exact_jet(*derivs):
    return jet_from_derivatives([Fraction(d) for d in derivs])


class TestMobiusJet:
    def test_identity_map(self):
        jet = mobius_jet(MobiusStabilizer(Fraction(1), Fraction(0)), 3)
        assert derivatives_from_jet(jet) == [1, 0, 0]

    def test_a2_c1(self):
        jet = mobius_jet(MobiusStabilizer(Fraction(2), Fraction(1)), 3)
        # 2z - 2z^2 + 2z^3 in Taylor form
        assert jet.coefficients == (2, -2, 2)

    def test_a1_cm1(self):
        jet = mobius_jet(MobiusStabilizer(Fraction(1), Fraction(-1)), 2)
        assert jet.coefficients == (1, 1)

    def test_zero_a_rejected(self):
        with pytest.raises(ValueError, match="nonzero"):
            MobiusStabilizer(Fraction(0), Fraction(1))


def symbolic_table(k):
    """Transformed derivative coordinates for the generic order-k jet."""
    variables = ("a", "c") + tuple(f"u{l}" for l in range(1, k + 1))
    h = MobiusStabilizer(
        LaurentPolynomial.variable(variables, "a"),
        LaurentPolynomial.variable(variables, "c"),
    )
    generic = jet_from_derivatives(
        [LaurentPolynomial.variable(variables, f"u{l}") for l in range(1, k + 1)]
    )
    return variables, derivatives_from_jet(stabilizer_action(generic, h))


class TestStabilizerAction:
    def test_symbolic_k4_table(self):
        variables, rows = symbolic_table(4)

        def mono(coeff, a, c, us):
            exps = (a, c) + us
            return LaurentPolynomial(variables, {exps: Fraction(coeff)})

        expected = [
            mono(1, 1, 0, (1, 0, 0, 0)),
            mono(1, 2, 0, (0, 1, 0, 0)) + mono(-2, 1, 1, (1, 0, 0, 0)),
            mono(1, 3, 0, (0, 0, 1, 0))
            + mono(-6, 2, 1, (0, 1, 0, 0))
            + mono(6, 1, 2, (1, 0, 0, 0)),
            mono(1, 4, 0, (0, 0, 0, 1))
            + mono(-12, 3, 1, (0, 0, 1, 0))
            + mono(36, 2, 2, (0, 1, 0, 0))
            + mono(-24, 1, 3, (1, 0, 0, 0)),
        ]
        assert rows == expected

    def test_numeric_substitution(self):
        acted = stabilizer_action(
            exact_jet(1, 0, 0, 0), MobiusStabilizer(Fraction(2), Fraction(3))
        )
        assert derivatives_from_jet(acted) == [2, -12, 108, -1296]

    def test_identity_element(self):
        u = exact_jet(3, -1, 4, 2)
        assert stabilizer_action(u, MobiusStabilizer(Fraction(1), Fraction(0))) == u


class TestCanonicalProjection:
    def test_already_canonical(self):
        assert canonical_projection(exact_jet(1, 0, 5, 7)) == [5, 7]

    def test_ones(self):
        assert canonical_projection(exact_jet(1, 1, 1)) == [Fraction(-1, 2)]

    def test_mobius_jet_projects_to_zero(self):
        assert canonical_projection(exact_jet(1, -2, 6)) == [0]

    def test_invariant_subspace_error(self):
        with pytest.raises(InvariantSubspaceError, match="u1=0"):
            canonical_projection(exact_jet(0, 1, 1))

    def test_float_threshold(self):
        with pytest.raises(InvariantSubspaceError):
            canonical_projection(jet_from_derivatives([1e-12, 1.0, 1.0]))

    def test_representative_normalized_exactly(self):
        rep = derivatives_from_jet(canonical_representative(exact_jet(3, 5, -2, 7)))
        assert rep[0] == 1 and rep[1] == 0


def paper_family(k):
    """The printed w3..w5 displays, hand-coded over u1..uk."""
    variables = tuple(f"u{l}" for l in range(1, k + 1))

    def mono(coeff, **powers):
        exps = tuple(powers.get(v, 0) for v in variables)
        return LaurentPolynomial(variables, {exps: Fraction(*coeff) if isinstance(coeff, tuple) else Fraction(coeff)})

    w3 = mono(1, u1=-3, u3=1) + mono((-3, 2), u1=-4, u2=2)
    if k == 3:
        return [w3]
    w4 = mono(1, u1=-4, u4=1) + mono(-6, u1=-5, u2=1, u3=1) + mono(6, u1=-6, u2=3)
    if k == 4:
        return [w3, w4]
    w5 = (
        mono(1, u1=-5, u5=1)
        + mono(-10, u1=-6, u2=1, u4=1)
        + mono(30, u1=-7, u2=2, u3=1)
        + mono((-45, 2), u1=-8, u2=4)
    )
    return [w3, w4, w5]


def sympy_family(k):
    """Independent oracle: truncated composition in sympy."""
    z = sp.symbols("z")
    u = sp.symbols(f"u1:{k + 1}")
    series = sum(u[l - 1] * z**l / sp.factorial(l) for l in range(1, k + 1))
    a = 1 / u[0]
    c = u[1] / (2 * u[0] ** 2)
    inner = a * z * sum((-c * z) ** m for m in range(k))
    comp = sp.expand(series.subs(z, inner)) + sp.O(z ** (k + 1))
    comp = comp.removeO()
    return [
        sp.simplify(sp.expand(comp).coeff(z, l) * sp.factorial(l)) for l in range(3, k + 1)
    ]


class TestSymbolicInvariants:
    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_matches_printed_displays(self, k):
        family = symbolic_invariants(k)
        assert list(family.symbols) == paper_family(k)

    @pytest.mark.parametrize("k", [3, 4, 5, 6])
    def test_matches_sympy_oracle(self, k):
        family = symbolic_invariants(k)
        oracle = sympy_family(k)
        u = sp.symbols(f"u1:{k + 1}")
        for mine, ref in zip(family.symbols, oracle):
            expr = sp.S(0)
            for exps, coeff in mine.terms.items():
                term = sp.Rational(coeff.numerator, coeff.denominator)
                for sym, e in zip(u, exps):
                    term *= sym**e
                expr += term
            assert sp.simplify(expr - ref) == 0

    def test_rejects_low_order(self):
        with pytest.raises(DomainError, match="below order 3"):
            symbolic_invariants(2)

    def test_wl_depends_only_on_low_coordinates(self):
        family = symbolic_invariants(6)
        for l, w in zip(range(3, 7), family.symbols):
            assert w.support_variables() <= {f"u{m}" for m in range(1, l + 1)}


class TestSymbolicInvariance:
    @pytest.mark.parametrize("k", [3, 4, 5, 6])
    def test_projection_constant_on_orbits(self, k):
        variables = ("a", "c") + tuple(f"u{l}" for l in range(1, k + 1))
        h = MobiusStabilizer(
            LaurentPolynomial.variable(variables, "a"),
            LaurentPolynomial.variable(variables, "c"),
        )
        generic = jet_from_derivatives(
            [LaurentPolynomial.variable(variables, f"u{l}") for l in range(1, k + 1)]
        )
        acted = canonical_projection(stabilizer_action(generic, h))
        plain = canonical_projection(generic)
        for p, q in zip(acted, plain):
            assert (p - q).is_zero()


class TestOperators:
    def test_d1_affine(self):
        assert eval_D1(exact_jet(1, 0, 0)) == 0

    def test_d1_examples(self):
        assert eval_D1(exact_jet(1, 1, 1)) == Fraction(-1, 2)
        assert eval_D1(exact_jet(2, 0, 6)) == Fraction(3, 4)

    def test_d2_examples(self):
        assert eval_D2(exact_jet(1, 0, 0, 9)) == 9
        assert eval_D2(exact_jet(1, 1, 1, 1)) == 1
        assert eval_D2(exact_jet(1, -2, 6, -24)) == 0

    def test_domain_errors(self):
        with pytest.raises(InvariantSubspaceError):
            eval_D1(exact_jet(0, 1, 1))
        with pytest.raises(ValueError, match="order"):
            eval_D2(exact_jet(1, 1, 1))

    def test_matches_projection_components(self):
        u = exact_jet(2, -3, 5, 7)
        w = canonical_projection(u)
        assert eval_D1(u) == w[0] and eval_D2(u) == w[1]


class TestMobiusJetAt:
    def test_identity(self):
        out = mobius_jet_at(Mobius(1, 0, 0, 1), Fraction(5), 3)
        assert out.value == 5 and out.tail.coefficients == (1, 0, 0)

    def test_translation(self):
        out = mobius_jet_at(Mobius(1, Fraction(7), 0, 1), Fraction(0), 2)
        assert out.value == 7 and out.tail.coefficients == (1, 0)

    def test_z_over_z_plus_one_at_one(self):
        out = mobius_jet_at(Mobius(1, 0, 1, 1), Fraction(1), 2)
        assert out.value == Fraction(1, 2)
        assert out.tail.coefficients == (Fraction(1, 4), Fraction(-1, 8))

    def test_pole_rejected(self):
        with pytest.raises(DomainError, match="pole"):
            mobius_jet_at(Mobius(1, 0, 1, -1), Fraction(1), 2)

    def test_pullback_composes_jets(self):
        # f(w) = w^2 + w around g(z0), g = z/(z+1), z0 = 1
        g = Mobius(1, 0, 1, 1)
        map_jet = mobius_jet_at(g, Fraction(1), 3)
        f_jet = jet_from_derivatives([Fraction(2) * map_jet.value + 1, Fraction(2), Fraction(0)])
        chained = pullback_jet(f_jet, map_jet)
        # direct jet of h(z) = g(z)^2 + g(z) at 1: h' = (2g+1)g', etc.
        gp, gpp, gppp = (
            Fraction(1, 4),
            Fraction(-1, 4),
            Fraction(3, 8),
        )
        gval = Fraction(1, 2)
        expected = [
            (2 * gval + 1) * gp,
            2 * gp * gp + (2 * gval + 1) * gpp,
            6 * gp * gpp + (2 * gval + 1) * gppp,
        ]
        assert derivatives_from_jet(chained) == expected


class TestRandomizedProperties:
    def test_full_group_invariance_sample(self):
        result = check_mobius_invariance(seed=20250810, trials=150, tol=1e-9)
        assert result.passed, result.failures[:3]

    def test_independence_rank(self):
        result = check_mobius_rank(seed=20250810, trials=50)
        assert result.passed, result.failures[:3]
