"""Jets of analytic functions under fractional-linear changes of variable.

The group GL(2) acts on analytic functions by transforming the argument,
z -> (a z + b)/(c z + d).  Working at the origin, the subgroup fixing 0 is
parametrised by pairs (a, c) with a != 0, acting on the k-jet of a function
through truncated composition with the jet of z -> a z/(c z + 1).

On the open stratum u1 != 0 every orbit contains exactly one representative
with u1 = 1 and u2 = 0; its remaining Taylor data w3..wk are a complete,
functionally independent family of invariants.  This module computes that
family three ways:

* numerically, for float or exact-rational jets (``canonical_projection``);
* symbolically, as exact Laurent polynomials in u1..uk (``symbolic_invariants``),
  e.g.  w3 = u3/u1^3 - (3/2) u2^2/u1^4,  the scalar-valued Schwarzian;
* as closed-form evaluations ``eval_D1`` / ``eval_D2`` of the order-3 and
  order-4 invariant operators.

Jets are stored in Taylor form (coefficient of z^l); the derivative
convention u_l = l! c_l enters through ``jet_from_derivatives`` and
``derivatives_from_jet`` only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import DomainError, InvariantSubspaceError
from .exact import (
    LaurentPolynomial,
    PointedSeries,
    TruncatedSeries,
    series_compose,
    series_mul,
    series_reciprocal_shifted,
)

#: Floating canonical projection rejects |u1| below this times max |u_l|
#: (u1^-8 already appears in w5, so small u1 is catastrophically ill-posed).
FLOAT_U1_THRESHOLD = 1e-8


def _is_zero(value) -> bool:
    if isinstance(value, LaurentPolynomial):
        return value.is_zero()
    return value == 0


@dataclass(frozen=True)
class MobiusStabilizer:
    """Origin-fixing element, z -> a z / (c z + 1) with a != 0.

    Entries may be numbers or Laurent polynomials, so the same action code
    produces numeric orbits and symbolic transformation tables.
    """

    a: object
    c: object

    def __post_init__(self):
        if _is_zero(self.a):
            raise ValueError("stabilizer parameter a must be nonzero")


@dataclass(frozen=True)
class Mobius:
    """Full fractional-linear map z -> (a z + b)/(c z + d), ad - bc != 0."""

    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        if _is_zero(self.a * self.d - self.b * self.c):
            raise ValueError("degenerate coefficient matrix: ad - bc = 0")

    def __call__(self, z):
        return (self.a * z + self.b) / (self.c * z + self.d)


def jet_from_derivatives(derivatives: Sequence) -> TruncatedSeries:
    """Build a jet from derivative values (u_1, ..., u_k) at the base point."""
    return TruncatedSeries(
        u * Fraction(1, factorial(l)) for l, u in enumerate(derivatives, start=1)
    )


def derivatives_from_jet(jet: TruncatedSeries) -> list:
    """Derivative values u_l = l! c_l of a Taylor-form jet."""
    return [c * factorial(l) for l, c in enumerate(jet.coefficients, start=1)]


def mobius_jet(h: MobiusStabilizer, k: int) -> TruncatedSeries:
    """Order-k jet at 0 of z -> a z/(c z + 1).

    Geometric expansion: a z * sum_{m=0}^{k-1} (-c z)^m, so the coefficient
    of z^(m+1) is a*(-c)^m.
    """
    if k < 1:
        raise ValueError("jet order must be >= 1")
    coeffs = []
    power = h.a
    for _ in range(k):
        coeffs.append(power)
        power = power * (-h.c)
    return TruncatedSeries(coeffs)


def stabilizer_action(u: TruncatedSeries, h: MobiusStabilizer) -> TruncatedSeries:
    """Act on a jet by truncated composition with the stabilizer jet."""
    return series_compose(u, mobius_jet(h, u.order))


def _exactify(value):
    """Ints behave as exact rationals so integer jets never hit float division."""
    return Fraction(value) if isinstance(value, int) else value


def canonical_stabilizer(u: TruncatedSeries) -> MobiusStabilizer:
    """The unique stabilizer element moving ``u`` to its u1=1, u2=0 form.

    Solving w1 = u1 a = 1 and w2 = u2 a^2 - 2 u1 a c = 0 gives a = 1/u1 and
    c = u2/(2 u1^2).
    """
    _reject_zero_u1(u.coefficient(1), u)
    u1 = _exactify(u.coefficient(1))
    u2 = _exactify(u.coefficient(2) * 2) if u.order >= 2 else u1 * 0
    a = 1 / u1
    c = u2 / (2 * (u1 * u1))
    return MobiusStabilizer(a=a, c=c)


def canonical_representative(u: TruncatedSeries) -> TruncatedSeries:
    """The distinguished orbit element with u1 = 1 and u2 = 0."""
    return stabilizer_action(u, canonical_stabilizer(u))


def canonical_projection(u: TruncatedSeries) -> list:
    """Invariant coordinates (w_3, ..., w_k) of the jet's orbit.

    Requires u1 != 0.  Values follow the derivative convention, w_l = l! c_l
    of the canonical representative.
    """
    rep = canonical_representative(u)
    return derivatives_from_jet(rep)[2:]


@dataclass(frozen=True)
class InvariantSymbolFamily:
    """The complete family w3..wk as exact Laurent polynomials in u1..uk."""

    order: int
    symbols: tuple[LaurentPolynomial, ...]

    def names(self) -> list[str]:
        return [f"w{l}" for l in range(3, self.order + 1)]

    def items(self) -> list[tuple[str, LaurentPolynomial]]:
        return list(zip(self.names(), self.symbols))


def symbolic_invariants(k: int) -> InvariantSymbolFamily:
    """Compute w3..wk exactly by canonical projection of the generic jet.

    The generic jet has Taylor coefficients u_l/l! with u_l symbolic; the
    projection divides only by monomials in u1, so the result lives in the
    Laurent ring with u1 inverted.  For k = 5:

        w3 = u3*u1^-3 - 3/2*u2^2*u1^-4
        w4 = u4*u1^-4 - 6*u2*u3*u1^-5 + 6*u2^3*u1^-6
        w5 = u5*u1^-5 - 10*u2*u4*u1^-6 + 30*u2^2*u3*u1^-7 - 45/2*u2^4*u1^-8
    """
    if k < 3:
        raise DomainError("no invariants below order 3")
    variables = tuple(f"u{l}" for l in range(1, k + 1))
    generic = jet_from_derivatives(
        [LaurentPolynomial.variable(variables, f"u{l}") for l in range(1, k + 1)]
    )
    return InvariantSymbolFamily(order=k, symbols=tuple(canonical_projection(generic)))


def eval_D1(u: TruncatedSeries):
    """Order-3 invariant: the Schwarzian of the jet divided by u1^2.

    (1/u1^2) (u3/u1 - (3/2)(u2/u1)^2); equals the w3 component of the
    canonical projection.  Exact for exact input.
    """
    if u.order < 3:
        raise ValueError("eval_D1 needs a jet of order >= 3")
    u1, u2, u3 = (_exactify(x) for x in derivatives_from_jet(u)[:3])
    _reject_zero_u1(u1, u)
    r = u2 / u1
    return (u3 / u1 - 3 * r * r / 2) / (u1 * u1)


def eval_D2(u: TruncatedSeries):
    """Order-4 invariant u4/u1^4 - 6 u3 u2/u1^5 + 6 u2^3/u1^6 (the w4 symbol)."""
    if u.order < 4:
        raise ValueError("eval_D2 needs a jet of order >= 4")
    u1, u2, u3, u4 = (_exactify(x) for x in derivatives_from_jet(u)[:4])
    _reject_zero_u1(u1, u)
    p = u1 ** 2
    return u4 / p ** 2 - 6 * u3 * u2 / (p ** 2 * u1) + 6 * u2 ** 3 / p ** 3


def _reject_zero_u1(u1, u: TruncatedSeries) -> None:
    if isinstance(u1, float):
        bound = FLOAT_U1_THRESHOLD * max(
            (abs(x) for x in derivatives_from_jet(u)), default=0.0
        )
        if abs(u1) <= bound:
            raise InvariantSubspaceError("jet in the invariant subspace u1=0")
    elif _is_zero(u1):
        raise InvariantSubspaceError("jet in the invariant subspace u1=0")


def mobius_jet_at(g: Mobius, z0, k: int) -> PointedSeries:
    """Order-k Taylor data of the map g at the base point z0.

    Writing g(z0 + h) = (A + a h)/(B + c h) with A = a z0 + b, B = c z0 + d,
    the expansion is exact in the coefficient field (rational for rational
    input).  The constant term g(z0) is kept separately so jets at different
    base points can be chained.
    """
    if k < 1:
        raise ValueError("jet order must be >= 1")
    A = g.a * z0 + g.b
    B = g.c * z0 + g.d
    if isinstance(B, float):
        if abs(B) < 1e-12:
            raise DomainError(f"pole of the map at z0={z0!r}")
    elif _is_zero(B):
        raise DomainError(f"pole of the map at z0={z0!r}")
    zero = B * 0
    den_tail = TruncatedSeries([g.c] + [zero] * (k - 1))
    recip = series_reciprocal_shifted(B, den_tail)
    num_tail = TruncatedSeries([g.a] + [zero] * (k - 1))
    tail = (
        series_mul(num_tail, recip.tail)
        + num_tail.scale(recip.value)
        + recip.tail.scale(A)
    )
    return PointedSeries(value=A * recip.value, tail=tail)


def pullback_jet(f_jet_at_image: TruncatedSeries, map_jet: PointedSeries) -> TruncatedSeries:
    """Jet of f∘g at z0 from the jet of f at g(z0) and the jet of g at z0."""
    return series_compose(f_jet_at_image, map_jet.tail)
