"""2-jets of scalar functions on pseudo-Euclidean space and their group actions.

The metric signature is fixed to diag(-1, 1, ..., 1).  A 2-jet is the pair
(u_a, u_{ab}): the gradient covector and the symmetric Hessian at a point,
with the function value dropped.  A point transformation enters through its
own order-2 Taylor data (A^m_n, A^m_{n1 n2}), and acts on scalar jets by the
chain rule for f∘phi:

    u_m      ->  A^n_m u_n
    u_{m1m2} ->  A^{n1}_{m1} A^{n2}_{m2} u_{n1n2} + A^n_{m1m2} u_n

The dilatation, rotation and special-conformal actions are special cases and
are also provided in closed form.  Everything here is double precision;
exact arithmetic lives in :mod:`jetred.exact`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LORENTZ_TOL = 1e-10


@dataclass(frozen=True)
class Metric:
    """diag(-1, 1, ..., 1) in dimension n >= 2, with index gymnastics."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("dimension must be >= 2")

    @property
    def eta(self) -> np.ndarray:
        e = np.ones(self.n)
        e[0] = -1.0
        return np.diag(e)

    def up(self, u: np.ndarray) -> np.ndarray:
        """Raise an index (eta is its own inverse, so this flips the time part)."""
        u = self._check(u)
        out = u.copy()
        out[0] = -out[0]
        return out

    down = up  # lowering is the same sign flip

    def inner(self, u: np.ndarray, v: np.ndarray) -> float:
        """eta^{ab} u_a v_b = -u_0 v_0 + sum_i u_i v_i (both arguments covariant)."""
        u = self._check(u)
        v = self._check(v)
        return float(u @ self.up(v))

    def _check(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if u.shape != (self.n,):
            raise ValueError(f"expected a vector of length {self.n}, got shape {u.shape}")
        return u


def raise_index(u: np.ndarray, metric: Metric) -> np.ndarray:
    return metric.up(u)


def lower_index(u: np.ndarray, metric: Metric) -> np.ndarray:
    return metric.down(u)


def inner(u: np.ndarray, v: np.ndarray, metric: Metric) -> float:
    return metric.inner(u, v)


def _symmetrize(m: np.ndarray) -> np.ndarray:
    return (m + m.T) / 2.0


@dataclass(frozen=True)
class ScalarJet2:
    """2-jet (u_a, u_{a1 a2}) of a scalar function: covector + symmetric matrix."""

    u: np.ndarray
    u2: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        u2 = np.asarray(self.u2, dtype=float)
        n = u.shape[0]
        if u.ndim != 1 or u2.shape != (n, n):
            raise ValueError(f"shape mismatch: u {u.shape}, u2 {u2.shape}")
        if not (np.isfinite(u).all() and np.isfinite(u2).all()):
            raise ValueError("jet entries must be finite")
        scale = max(1.0, float(np.abs(u2).max()))
        if np.abs(u2 - u2.T).max() > 1e-12 * scale:
            raise ValueError("u2 is not symmetric")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "u2", _symmetrize(u2))

    @property
    def n(self) -> int:
        return self.u.shape[0]

    def metric(self) -> Metric:
        return Metric(self.n)


@dataclass(frozen=True)
class Map2Jet:
    """Order-2 Taylor data of a point transformation.

    ``value`` is the image of the base point, ``A[m, n]`` = A^m_n the Jacobian
    and ``A2[m, n1, n2]`` = A^m_{n1 n2} the symmetric second-derivative array.
    """

    value: np.ndarray
    A: np.ndarray
    A2: np.ndarray

    def __post_init__(self):
        value = np.asarray(self.value, dtype=float)
        A = np.asarray(self.A, dtype=float)
        A2 = np.asarray(self.A2, dtype=float)
        n = value.shape[0]
        if A.shape != (n, n) or A2.shape != (n, n, n):
            raise ValueError(f"shape mismatch: value {value.shape}, A {A.shape}, A2 {A2.shape}")
        if abs(np.linalg.det(A)) < 1e-12:
            raise ValueError("Jacobian is singular")
        scale = max(1.0, float(np.abs(A2).max()))
        if np.abs(A2 - A2.transpose(0, 2, 1)).max() > 1e-12 * scale:
            raise ValueError("A2 is not symmetric in its lower indices")
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "A2", (A2 + A2.transpose(0, 2, 1)) / 2.0)

    @property
    def n(self) -> int:
        return self.value.shape[0]

    @classmethod
    def identity(cls, n: int) -> "Map2Jet":
        return cls(np.zeros(n), np.eye(n), np.zeros((n, n, n)))

    @classmethod
    def linear(cls, A: np.ndarray, value=None) -> "Map2Jet":
        A = np.asarray(A, dtype=float)
        n = A.shape[0]
        return cls(np.zeros(n) if value is None else value, A, np.zeros((n, n, n)))


def compose_map2(outer: Map2Jet, inner: Map2Jet) -> Map2Jet:
    """2-jet of outer∘inner (outer's data taken at inner.value)."""
    if outer.n != inner.n:
        raise ValueError("dimension mismatch")
    A = outer.A @ inner.A
    A2 = np.einsum("mr,rij->mij", outer.A, inner.A2) + np.einsum(
        "mrs,ri,sj->mij", outer.A2, inner.A, inner.A
    )
    return Map2Jet(outer.value, A, A2)


def diffeo_action(jet: ScalarJet2, phi: Map2Jet) -> ScalarJet2:
    """Chain rule for f∘phi on the fibre: the displayed 2-jet action."""
    if jet.n != phi.n:
        raise ValueError("dimension mismatch")
    u = phi.A.T @ jet.u
    u2 = phi.A.T @ jet.u2 @ phi.A + np.einsum("nij,n->ij", phi.A2, jet.u)
    return ScalarJet2(u, _symmetrize(u2))


def dilatation_action(jet: ScalarJet2, lam: float) -> ScalarJet2:
    """(u, u2) -> (lam*u, lam^2*u2), lam > 0."""
    if not lam > 0:
        raise ValueError("dilatation factor must be positive")
    return ScalarJet2(lam * jet.u, lam * lam * jet.u2)


def is_lorentz(Lam: np.ndarray, metric: Metric, tol: float = LORENTZ_TOL) -> bool:
    eta = metric.eta
    return bool(np.abs(Lam.T @ eta @ Lam - eta).max() <= tol)


def lorentz_action(jet: ScalarJet2, Lam: np.ndarray) -> ScalarJet2:
    """(u, u2) -> (Lam^T u, Lam^T u2 Lam) for Lam with Lam^T eta Lam = eta."""
    Lam = np.asarray(Lam, dtype=float)
    if Lam.shape != (jet.n, jet.n):
        raise ValueError("dimension mismatch")
    if not is_lorentz(Lam, jet.metric()):
        raise ValueError("matrix does not preserve the metric")
    return ScalarJet2(Lam.T @ jet.u, _symmetrize(Lam.T @ jet.u2 @ Lam))


def sct_action(jet: ScalarJet2, b: np.ndarray) -> ScalarJet2:
    """Fibre action of a special conformal factor with parameter vector b.

    The first-order part is untouched; the Hessian shifts by
    -2 u (x) b_low - 2 b_low (x) u + 2 (u_c b^c) eta.
    """
    b = np.asarray(b, dtype=float)
    if b.shape != (jet.n,):
        raise ValueError("dimension mismatch")
    m = jet.metric()
    b_low = m.down(b)
    s = float(jet.u @ b)  # u_c b^c
    u2 = jet.u2 - 2.0 * np.outer(jet.u, b_low) - 2.0 * np.outer(b_low, jet.u) + 2.0 * s * m.eta
    return ScalarJet2(jet.u.copy(), u2)


def sct_map2(b: np.ndarray, n: int | None = None) -> Map2Jet:
    """Order-2 jet at the fixed point of the special conformal factor.

    Expansion x^m - 2 x^m (b.x) + b^m x^2 gives A = I and
    A2^m_{n1 n2} = -2 d^m_{n1} b_{n2} - 2 d^m_{n2} b_{n1} + 2 b^m eta_{n1 n2}.
    """
    b = np.asarray(b, dtype=float)
    n = b.shape[0] if n is None else n
    m = Metric(n)
    b_low = m.down(b)
    eye = np.eye(n)
    A2 = (
        -2.0 * np.einsum("mi,j->mij", eye, b_low)
        - 2.0 * np.einsum("mj,i->mij", eye, b_low)
        + 2.0 * np.einsum("m,ij->mij", b, m.eta)
    )
    return Map2Jet(np.zeros(n), eye, A2)
