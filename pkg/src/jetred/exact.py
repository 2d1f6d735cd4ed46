"""Exact computational substrate: rationals, Laurent polynomials, truncated series.

Three layers, all immutable after construction:

``Rational``
    Alias of :class:`fractions.Fraction`.  The stdlib type already guarantees
    lowest terms, a positive denominator and the canonical zero 0/1, which is
    exactly the contract needed here.

``LaurentPolynomial``
    Sparse multivariate polynomial over the rationals with integer exponents.
    Representation: an ordered tuple of variable names plus a dict mapping
    exponent vectors (one int per variable) to nonzero Fraction coefficients,

        u3*u1^-3  ->  {(-3, 0, 1): Fraction(1)}      over ("u1", "u2", "u3")

    Negative exponents are allowed only for the designated invertible symbols
    ("u1" and "a"): the jet coordinate u1 and the stabilizer parameter a are
    the quantities the theory divides by, nothing else ever is.  Equality is
    structural; printing sorts terms in descending graded-lexicographic order
    so rendered output is canonical and stable.

``TruncatedSeries``
    A power series z*c1 + z^2*c2 + ... + z^k*ck truncated at a fixed order k,
    with zero constant term by construction.  Coefficients live in any
    commutative ring with +, -, * (Fraction, float, LaurentPolynomial), so the
    same composition code drives exact, floating and fully symbolic jets.
    Coefficients are stored in Taylor form (c_l = u_l / l!); the derivative
    convention u_l = l! * c_l is applied only at the API boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction

#: Symbols that may carry negative exponents.
INVERTIBLE_SYMBOLS = frozenset({"u1", "a"})

Exponents = tuple[int, ...]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational coefficient, got {type(value).__name__}")


def grlex_key(exponents: Exponents) -> tuple:
    """Graded-lex sort key: total degree first, then lexicographic."""
    return (sum(exponents), exponents)


class LaurentPolynomial:
    """Exact multivariate Laurent polynomial; see module docstring."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponents, Fraction] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise ValueError(
                    f"exponent vector arity {len(exps)} != number of variables {len(variables)}"
                )
            coeff = _as_fraction(coeff)
            if coeff == 0:
                continue
            for name, e in zip(variables, exps):
                if e < 0 and name not in INVERTIBLE_SYMBOLS:
                    raise ValueError(f"negative exponent on non-invertible symbol {name!r}")
            clean[exps] = coeff
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "LaurentPolynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Sequence[str], value) -> "LaurentPolynomial":
        return cls(variables, {(0,) * len(variables): _as_fraction(value)})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "LaurentPolynomial":
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponents: Exponents, coeff=1) -> "LaurentPolynomial":
        return cls(variables, {tuple(exponents): _as_fraction(coeff)})

    # -- ring structure ----------------------------------------------------

    def _check_compatible(self, other: "LaurentPolynomial") -> None:
        if self.variables != other.variables:
            raise ValueError(
                f"variable lists differ: {self.variables} vs {other.variables}"
            )

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            self._check_compatible(other)
            return other
        return LaurentPolynomial.constant(self.variables, other)

    def __add__(self, other) -> "LaurentPolynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps, Fraction(0)) + coeff
            if acc == 0:
                out.pop(exps, None)
            else:
                out[exps] = acc
        return LaurentPolynomial(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPolynomial":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            coeff = _as_fraction(other)
            if coeff == 0:
                return LaurentPolynomial.zero(self.variables)
            return LaurentPolynomial(
                self.variables, {e: c * coeff for e, c in self.terms.items()}
            )
        self._check_compatible(other)
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(exps, Fraction(0)) + c1 * c2
                if acc == 0:
                    out.pop(exps, None)
                else:
                    out[exps] = acc
        return LaurentPolynomial(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if not isinstance(n, int):
            raise TypeError("exponent must be an int")
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentPolynomial.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "LaurentPolynomial":
        """Invert a single-term monomial supported on invertible symbols only."""
        if len(self.terms) != 1:
            raise ValueError("only single-term monomials are invertible")
        ((exps, coeff),) = self.terms.items()
        for name, e in zip(self.variables, exps):
            if e != 0 and name not in INVERTIBLE_SYMBOLS:
                raise ValueError(f"cannot invert symbol {name!r}")
        return LaurentPolynomial(
            self.variables, {tuple(-e for e in exps): Fraction(1) / coeff}
        )

    def __truediv__(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return self * other.inverse()
        return self * (Fraction(1) / _as_fraction(other))

    def __rtruediv__(self, other) -> "LaurentPolynomial":
        return self.inverse() * other

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPolynomial.constant(self.variables, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- calculus and evaluation -------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def derivative(self, name: str) -> "LaurentPolynomial":
        """Formal partial derivative with respect to one variable."""
        idx = self.variables.index(name)
        out: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[idx]
            if e == 0:
                continue
            new = list(exps)
            new[idx] = e - 1
            key = tuple(new)
            acc = out.get(key, Fraction(0)) + coeff * e
            if acc == 0:
                out.pop(key, None)
            else:
                out[key] = acc
        return LaurentPolynomial(self.variables, out)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at a point; exact for Fraction values, float otherwise."""
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise ValueError(f"no value supplied for {missing}")
        total = None
        for exps, coeff in self.terms.items():
            acc = coeff
            for name, e in zip(self.variables, exps):
                if e:
                    acc = acc * values[name] ** e
            total = acc if total is None else total + acc
        if total is None:
            return Fraction(0)
        return total

    def support_variables(self) -> frozenset[str]:
        """Names of variables appearing with a nonzero exponent."""
        used = set()
        for exps in self.terms:
            for name, e in zip(self.variables, exps):
                if e:
                    used.add(name)
        return frozenset(used)

    # -- printing ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in descending graded-lex order (the canonical print order)."""
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exps, coeff in self.sorted_terms():
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.variables, exps)
                if e != 0
            ]
            mono = "*".join(factors)
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self})"


class TruncatedSeries:
    """Truncated power series with zero constant term; see module docstring."""

    __slots__ = ("order", "coefficients")

    def __init__(self, coefficients: Iterable):
        coefficients = tuple(coefficients)
        if not coefficients:
            raise ValueError("order must be >= 1")
        object.__setattr__(self, "order", len(coefficients))
        object.__setattr__(self, "coefficients", coefficients)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    def _zero_coeff(self):
        return self.coefficients[0] * 0

    def coefficient(self, degree: int):
        """Coefficient of z^degree, degrees 1..order."""
        if not 1 <= degree <= self.order:
            raise ValueError(f"degree {degree} outside 1..{self.order}")
        return self.coefficients[degree - 1]

    def _check_order(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_order(other)
        return TruncatedSeries(a + b for a, b in zip(self.coefficients, other.coefficients))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_order(other)
        return TruncatedSeries(a - b for a, b in zip(self.coefficients, other.coefficients))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-c for c in self.coefficients)

    def scale(self, factor) -> "TruncatedSeries":
        return TruncatedSeries(c * factor for c in self.coefficients)

    def truncate(self, order: int) -> "TruncatedSeries":
        """Forget coefficients above ``order`` (order must not exceed self.order)."""
        if not 1 <= order <= self.order:
            raise ValueError(f"cannot truncate order {self.order} to {order}")
        return TruncatedSeries(self.coefficients[:order])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coefficients, other.coefficients)
        )

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coefficients)!r})"


@dataclass(frozen=True)
class PointedSeries:
    """A truncated series together with the constant term kept separately.

    Used for jets taken at arbitrary base points: ``value`` is the image of
    the base point, ``tail`` the order-k fluctuation, so pointed jets chain by
    composing tails and transporting values.
    """

    value: object
    tail: TruncatedSeries


def series_mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, discarding every monomial of degree above the order."""
    s._check_order(t)
    k = s.order
    zero = s._zero_coeff()
    out = [zero] * k
    for i, ci in enumerate(s.coefficients, start=1):
        for j, cj in enumerate(t.coefficients, start=1):
            if i + j > k:
                break
            out[i + j - 1] = out[i + j - 1] + ci * cj
    return TruncatedSeries(out)


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Truncated composition outer(inner(z)).

    Horner evaluation in the truncated ring: since inner has zero constant
    term, each multiplication by inner raises the valuation, so truncating at
    every step loses nothing below the order.
    """
    outer._check_order(inner)
    k = outer.order
    zero = outer._zero_coeff()
    acc = TruncatedSeries([zero] * k)
    for coeff in reversed(outer.coefficients):
        acc = series_mul(inner, acc) + inner.scale(coeff)
    return acc


def series_reciprocal_shifted(denominator_constant, tail: TruncatedSeries) -> PointedSeries:
    """Order-k expansion of 1/(d0 + tail(z)) as constant plus series.

    Finite geometric series: 1/(d0 + t) = (1/d0) * sum_m (-t/d0)^m, truncated
    at the series order.  ``denominator_constant`` must be invertible in the
    coefficient ring.
    """
    if _is_zero_scalar(denominator_constant):
        raise ValueError("denominator constant term is not invertible")
    if isinstance(denominator_constant, int):
        denominator_constant = Fraction(denominator_constant)
    inv = 1 / denominator_constant
    q = tail.scale(-inv)
    power = q
    total = q
    for _ in range(2, tail.order + 1):
        power = series_mul(power, q)
        total = total + power
    return PointedSeries(value=inv, tail=total.scale(inv))


def _is_zero_scalar(value) -> bool:
    if isinstance(value, LaurentPolynomial):
        return value.is_zero()
    return value == 0
