"""Concrete differentiable test functions and their exact jets.

Invariance checks need real functions, not synthetic jets, so this module
fixes a small catalog that is closed-form differentiable:

* ``PolynomialFunction`` - multivariate polynomial of total degree <= 4,
  stored sparsely as exponent-tuple -> coefficient;
* ``UnivariatePolynomial`` - coefficient list, lowest degree first;
* ``MobiusFunction`` - one-variable fractional-linear map;
* ``ComposedQuadratic`` - univariate polynomial applied to a scalar
  affine-plus-quadratic argument c0 + a.x + x^T Q x.

``jet2_of`` and ``jetk_of`` differentiate the catalog analytically.  For
compositions with conformal words, ``jet2_of_pulled_back`` evaluates the
catalog function on the word's degree-2 truncated expansion, a forward-mode
route that never touches the 2-jet composition law it is used to check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

import numpy as np

from .conformal import ConformalElement, MultiPoly2, word_polys
from .exact import TruncatedSeries
from .minkowski import ScalarJet2
from .mobius import Mobius, mobius_jet_at

MAX_MULTIVARIATE_DEGREE = 4


@dataclass(frozen=True)
class PolynomialFunction:
    """Sparse multivariate polynomial, exponent tuples -> float coefficients."""

    n: int
    coefficients: Mapping[tuple[int, ...], float]

    def __post_init__(self):
        clean = {}
        for exps, coeff in self.coefficients.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps}")
            if sum(exps) > MAX_MULTIVARIATE_DEGREE:
                raise ValueError("total degree above the catalog bound")
            if coeff != 0:
                clean[exps] = float(coeff)
        object.__setattr__(self, "coefficients", clean)

    def __call__(self, x):
        """Evaluate at a point or on any commutative ring elements (e.g. MultiPoly2)."""
        total = None
        for exps, coeff in self.coefficients.items():
            term = coeff
            for xi, e in zip(x, exps):
                for _ in range(e):
                    term = term * xi
            total = term if total is None else total + term
        if total is None:
            return 0.0 if not isinstance(x[0], MultiPoly2) else MultiPoly2.constant(self.n, 0.0)
        return total

    def gradient(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros(self.n)
        for exps, coeff in self.coefficients.items():
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                term = coeff * e
                for j, ej in enumerate(exps):
                    p = ej - 1 if j == i else ej
                    term *= x[j] ** p
                out[i] += term
        return out

    def hessian(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros((self.n, self.n))
        for exps, coeff in self.coefficients.items():
            for i, ei in enumerate(exps):
                if ei == 0:
                    continue
                for j, ej in enumerate(exps):
                    factor = ei * (ei - 1) if i == j else ei * ej
                    if factor == 0:
                        continue
                    term = coeff * factor
                    for kk, ek in enumerate(exps):
                        p = ek - (2 if kk == i and i == j else (1 if kk in (i, j) else 0))
                        term *= x[kk] ** p
                    out[i, j] += term
        return out


@dataclass(frozen=True)
class UnivariatePolynomial:
    """p(z) = sum coefficients[m] z^m; exact if the coefficients are exact."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))

    def __call__(self, z):
        total = 0 * z
        for c in reversed(self.coefficients):
            total = total * z + c
        return total

    def derivative(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial(
            tuple(m * c for m, c in enumerate(self.coefficients) if m >= 1)
        )


@dataclass(frozen=True)
class MobiusFunction:
    """(a z + b)/(c z + d) as a catalog entry; jets via the pointed expansion."""

    a: object
    b: object
    c: object
    d: object

    def as_map(self) -> Mobius:
        return Mobius(self.a, self.b, self.c, self.d)

    def __call__(self, z):
        return self.as_map()(z)


@dataclass(frozen=True)
class ComposedQuadratic:
    """outer(c0 + a.x + x^T Q x) with Q symmetric: derivatives by chain rule."""

    outer: UnivariatePolynomial
    c0: float
    a: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        Q = np.asarray(self.Q, dtype=float)
        if Q.shape != (a.shape[0], a.shape[0]) or np.abs(Q - Q.T).max() > 1e-12:
            raise ValueError("Q must be symmetric and match the argument dimension")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "Q", (Q + Q.T) / 2.0)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def argument(self, x):
        lin = sum((ai * xi for ai, xi in zip(self.a, x)), self.c0 * 1.0)
        quad = None
        for i in range(self.n):
            for j in range(self.n):
                if self.Q[i, j] == 0.0:
                    continue
                term = self.Q[i, j] * x[i] * x[j]
                quad = term if quad is None else quad + term
        return lin if quad is None else lin + quad

    def __call__(self, x):
        return self.outer(self.argument(x))


def jet2_of(f, x) -> ScalarJet2:
    """Exact 2-jet (gradient, Hessian) of a catalog function at x."""
    x = np.asarray(x, dtype=float)
    if isinstance(f, PolynomialFunction):
        return ScalarJet2(f.gradient(x), f.hessian(x))
    if isinstance(f, ComposedQuadratic):
        ell = float(f.argument(x))
        d_ell = f.a + 2.0 * (f.Q @ x)
        d2_ell = 2.0 * f.Q
        p1 = f.outer.derivative()
        p2 = p1.derivative()
        grad = float(p1(ell)) * d_ell
        hess = float(p2(ell)) * np.outer(d_ell, d_ell) + float(p1(ell)) * d2_ell
        return ScalarJet2(grad, hess)
    raise TypeError(f"not a multivariate catalog function: {type(f).__name__}")


def jetk_of(f, z0, k: int) -> TruncatedSeries:
    """Order-k univariate jet at z0, constant term dropped.

    Exact when the function and z0 are exact (Fraction/int); float otherwise.
    """
    if isinstance(f, UnivariatePolynomial):
        coeffs = []
        current = f
        fact = 1
        for l in range(1, k + 1):
            current = current.derivative()
            fact *= l
            value = current(z0) if current.coefficients else 0 * z0
            coeffs.append(value * Fraction(1, fact) if not isinstance(value, float) else value / fact)
        return TruncatedSeries(coeffs)
    if isinstance(f, MobiusFunction):
        return mobius_jet_at(f.as_map(), z0, k).tail
    raise TypeError(f"not a univariate catalog function: {type(f).__name__}")


def jet2_of_pulled_back(f, g: ConformalElement, x) -> ScalarJet2:
    """Exact 2-jet of f∘g at x by forward truncated arithmetic.

    The word's degree-2 expansion around x is fed straight into the catalog
    function's evaluation; no Map2Jet and no jet transformation law is
    involved, so this is an independent oracle for the pullback route.
    """
    polys = word_polys(g, np.asarray(x, dtype=float))
    value = f(polys)
    if not isinstance(value, MultiPoly2):
        n = len(polys)
        value = MultiPoly2.constant(n, float(value))
    return ScalarJet2(value.gradient(), value.hessian())


def value_at(f, x) -> float:
    """Pointwise evaluation, shared by the finite-difference cross-checks."""
    if isinstance(f, (PolynomialFunction, ComposedQuadratic)):
        return float(f(np.asarray(x, dtype=float)))
    return float(f(x))
