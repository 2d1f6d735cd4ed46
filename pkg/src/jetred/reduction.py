"""Canonicalization of timelike 2-jets and the complete trace invariants.

A 2-jet with timelike gradient is moved to a normal form in three steps, each
by a group element fixing the base point:

1. dilatation by 1/sqrt(-u^2), making the gradient unit timelike;
2. a hyperbolic rotation (boost) taking the unit gradient to e0;
3. a special conformal shift with parameter a_b = w_{0b}/2, which zeroes the
   time row and column of the Hessian and leaves a spatial (n-1)x(n-1)
   symmetric block w~.

The residual freedom is spatial orthogonal conjugation of w~, so the sorted
eigenvalues of w~, or equivalently the traces S_k = Tr(w~^k), k = 1..n-1,
coordinatize the quotient: they are a complete, functionally independent
system of invariants for second-order jets.

The same invariants admit closed forms directly in the original jet
variables, built from (grad f)^2, the Laplacian and the projector
P^{ab} = d^a f d^b f/(grad f)^2; ``D1_closed``..``D3_closed`` (n = 4) and the
general-n first invariant ``Dn_closed`` evaluate them verbatim.  On the
timelike domain S_k = (-1)^k D_k, a sign bookkeeping fixed by the canonical
family where (grad f)^2 = -1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonTimelikeGradient
from .minkowski import Metric, ScalarJet2, _symmetrize, lorentz_action, sct_action

BOOST_TOL = 1e-10
JACOBI_REL_TOL = 1e-12


def normalize_dilatation(jet: ScalarJet2) -> ScalarJet2:
    """Scale the jet so its gradient is unit timelike: (u/sqrt(-u^2), u2/(-u^2))."""
    m = jet.metric()
    usq = m.inner(jet.u, jet.u)
    if not usq < 0:
        raise NonTimelikeGradient(f"gradient is not timelike: u^2 = {usq:.6g} >= 0")
    return ScalarJet2(jet.u / np.sqrt(-usq), jet.u2 / (-usq))


def boost_to_e0(v: np.ndarray, metric: Metric | None = None) -> np.ndarray:
    """Hyperbolic rotation A with A v = e0 and A^T eta A = eta.

    Block form: first row (v_0, -v_vec), first column (v_0, v_vec), spatial
    block delta_ij - v_i v_j (1 + v_0)/|v_vec|^2.  The formula certifies on
    both time sheets; only v_vec = 0 needs its own branch (identity for
    v = e0, a time+axis flip for v = -e0, which still satisfies the metric
    constraint).  Both defining properties are asserted before returning.
    """
    v = np.asarray(v, dtype=float)
    m = metric or Metric(v.shape[0])
    n = m.n
    vsq = m.inner(v, v)
    if abs(vsq + 1.0) > 1e-8:
        raise ValueError(f"input must be unit timelike: v^2 = {vsq:.6g}")
    vvec = v[1:]
    space = float(vvec @ vvec)
    if space == 0.0:
        A = np.eye(n)
        if v[0] < 0:
            A[0, 0] = -1.0
            A[1, 1] = -1.0
        return A
    A = np.zeros((n, n))
    A[0, 0] = v[0]
    A[0, 1:] = -vvec
    A[1:, 0] = vvec
    A[1:, 1:] = np.eye(n - 1) - np.outer(vvec, vvec) * (1.0 + v[0]) / space
    e0 = np.zeros(n)
    e0[0] = 1.0
    if np.abs(A @ v - e0).max() > BOOST_TOL or np.abs(A.T @ m.eta @ A - m.eta).max() > BOOST_TOL:
        raise ArithmeticError("boost certification failed")
    return A


def sct_cancel(jet: ScalarJet2) -> ScalarJet2:
    """Zero the time row/column of the Hessian of a jet with gradient e0.

    On such jets the special conformal action reads w_{0b} -> w_{0b} - 2 a_b,
    w_{ij} -> w_{ij} - 2 a_0 d_ij, so a_b = w_{0b}/2 cancels the whole time
    row, leaving the spatial block w_{ij} - w_{00} d_ij.
    """
    n = jet.n
    e0 = np.zeros(n)
    e0[0] = 1.0
    if np.abs(jet.u - e0).max() > 1e-10:
        raise ValueError("first-order part must be e0")
    a = jet.u2[0, :] / 2.0  # covariant shift parameter
    b = jet.metric().up(a)
    out = sct_action(jet, b)
    residual = np.abs(out.u2[0, :]).max()
    if residual > 1e-10 * max(1.0, float(np.abs(jet.u2).max())):
        raise ArithmeticError(f"time row not cancelled, residual {residual:.3e}")
    return out


@dataclass(frozen=True)
class CanonicalJet:
    """Normal form of a timelike 2-jet: spatial block, spectrum, frame."""

    n: int
    w_tilde: np.ndarray
    eigenvalues: np.ndarray
    frame: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w_tilde, dtype=float)
        lam = np.asarray(self.eigenvalues, dtype=float)
        q = np.asarray(self.frame, dtype=float)
        k = self.n - 1
        if w.shape != (k, k) or lam.shape != (k,) or q.shape != (k, k):
            raise ValueError("inconsistent shapes for a canonical jet")
        scale = max(1.0, float(np.abs(w).max()))
        if np.abs(w - w.T).max() > 1e-12 * scale:
            raise ValueError("spatial block is not symmetric")
        if np.abs(q @ np.diag(lam) @ q.T - w).max() > 1e-10 * scale:
            raise ValueError("frame does not reproduce the spatial block")
        object.__setattr__(self, "w_tilde", w)
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "frame", q)


def canonicalize(jet: ScalarJet2) -> CanonicalJet:
    """Run the full chain: dilatation, boost, special-conformal shift, spectrum."""
    unit = normalize_dilatation(jet)
    A = boost_to_e0(unit.u, unit.metric())
    # the jet action is u -> Lam^T u, so the point matrix Lam = A^T sends u to A u = e0
    boosted = lorentz_action(unit, A.T)
    cancelled = sct_cancel(boosted)
    w_tilde = _symmetrize(cancelled.u2[1:, 1:])
    eigenvalues, frame = eigen_spatial(w_tilde)
    return CanonicalJet(n=jet.n, w_tilde=w_tilde, eigenvalues=eigenvalues, frame=frame)


def traces(canonical: CanonicalJet | np.ndarray) -> list[float]:
    """Power traces S_k = Tr(w~^k), k = 1..n-1, straight from the matrix."""
    w = canonical.w_tilde if isinstance(canonical, CanonicalJet) else np.asarray(canonical, float)
    out = []
    power = w
    for _ in range(w.shape[0]):
        out.append(float(np.trace(power)))
        power = power @ w
    return out


def eigen_spatial(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a small symmetric matrix by cyclic Jacobi sweeps.

    Rotations are applied until the off-diagonal Frobenius mass drops below
    1e-12 times the matrix norm.  Returns eigenvalues sorted ascending and
    the orthogonal frame Q with Q diag Q^T = w.  Sorting is a presentation
    choice: the spectrum itself is the invariant, and degeneracies are fine.
    """
    w = np.asarray(w, dtype=float)
    k = w.shape[0]
    if w.shape != (k, k) or np.abs(w - w.T).max() > 1e-10 * max(1.0, np.abs(w).max()):
        raise ValueError("expected a symmetric matrix")
    a = w.copy()
    q = np.eye(k)
    norm = float(np.linalg.norm(w)) or 1.0
    for _ in range(100):  # far more sweeps than small matrices ever need
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2) * 2)
        if off <= JACOBI_REL_TOL * norm:
            break
        for p in range(k - 1):
            for r in range(p + 1, k):
                if a[p, r] == 0.0:
                    continue
                tau = (a[r, r] - a[p, p]) / (2.0 * a[p, r])
                t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau)) if tau != 0 else 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                rot = np.eye(k)
                rot[p, p] = rot[r, r] = c
                rot[p, r] = s
                rot[r, p] = -s
                a = rot.T @ a @ rot
                q = q @ rot
    order = np.argsort(np.diag(a), kind="stable")
    return np.diag(a)[order].copy(), q[:, order].copy()


def elementary_from_traces(S) -> list[float]:
    """Elementary symmetric functions from power sums via Newton's identities.

    k sigma_k = sum_{i=1..k} (-1)^(i-1) sigma_{k-i} S_i, with sigma_0 = 1.
    """
    S = list(S)
    sigma = [1.0]
    for k in range(1, len(S) + 1):
        acc = 0.0
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * sigma[k - i] * S[i - 1]
        sigma.append(acc / k)
    return sigma[1:]


@dataclass(frozen=True)
class GradientFrame:
    """Shared contractions behind the closed-form invariants.

    gradSq = eta^{ab} d_a f d_b f, gradUp = d^a f, P = gradUp (x) gradUp/gradSq,
    lap = eta^{ab} d_ab f.  Only defined when gradSq != 0.
    """

    gradSq: float
    gradUp: np.ndarray
    P: np.ndarray
    lap: float


def gradient_frame(jet: ScalarJet2) -> GradientFrame:
    m = jet.metric()
    grad_sq = m.inner(jet.u, jet.u)
    if grad_sq == 0.0:
        raise NonTimelikeGradient("(grad f)^2 vanishes; the invariants divide by it")
    grad_up = m.up(jet.u)
    return GradientFrame(
        gradSq=grad_sq,
        gradUp=grad_up,
        P=np.outer(grad_up, grad_up) / grad_sq,
        lap=float(np.sum(m.eta * jet.u2)),
    )


def _normalized_parts(jet: ScalarJet2):
    f = gradient_frame(jet)
    V = jet.u2 / f.gradSq
    L = f.lap / f.gradSq
    PV = float(np.sum(f.P * V))
    return f, V, L, PV


def D1_closed(jet: ScalarJet2) -> float:
    """First invariant: lap f/(grad f)^2 + 2 P : (Hess f)/(grad f)^2."""
    _, _, L, PV = _normalized_parts(jet)
    return L + 2.0 * PV


def D2_closed(jet: ScalarJet2) -> float:
    """Second invariant (n = 4), quadratic in the normalized Hessian."""
    _require_dim(jet, 4)
    f, V, L, PV = _normalized_parts(jet)
    eta = jet.metric().eta
    return float(
        np.trace(V @ eta @ V @ eta)
        - 2.0 * np.trace(V @ f.P @ V @ eta)
        + 2.0 * PV * PV
        + 2.0 * L * PV
    )


def D3_closed(jet: ScalarJet2) -> float:
    """Third invariant (n = 4), cubic in the normalized Hessian.

    The six-index coefficient tensor is never materialized; its six terms
    contract to traces of products of V, eta and P directly.
    """
    _require_dim(jet, 4)
    f, V, L, PV = _normalized_parts(jet)
    eta = jet.metric().eta
    VE = V @ eta
    VP = V @ f.P
    return float(
        np.trace(VE @ VE @ VE)
        - 3.0 * np.trace(VE @ VP @ VE)
        + 3.0 * np.trace(VE @ VE) * PV
        + 3.0 * np.trace(VP @ VP @ VE)
        - 6.0 * np.trace(VP @ VE) * PV
        + 2.0 * PV ** 3
        + 3.0 * L * PV * PV
    )


def Dn_closed(jet: ScalarJet2) -> float:
    """First invariant in any dimension: lap f/(grad f)^2 + (n-2) P:V."""
    _, _, L, PV = _normalized_parts(jet)
    return L + (jet.n - 2.0) * PV


def _require_dim(jet: ScalarJet2, n: int) -> None:
    if jet.n != n:
        raise ValueError(f"this closed form is for dimension {n}, jet has {jet.n}")


#: S_k = TRACE_SIGN**k * D_k on the timelike domain (checked on the canonical
#: family before being pinned here; see the verification suites).
TRACE_SIGN = -1


@dataclass(frozen=True)
class InvariantReport:
    """Invariants of one jet plus internal consistency residuals."""

    n: int
    S: list[float]
    sigma: list[float]
    eigenvalues: list[float]
    D_closed: list[float]
    newton_residual: float
    closed_form_residuals: list[float]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "S": self.S,
            "sigma": self.sigma,
            "eigenvalues": self.eigenvalues,
            "D_closed": self.D_closed,
            "residuals": {
                "newton": self.newton_residual,
                "closed_form": self.closed_form_residuals,
            },
        }


def build_report(jet: ScalarJet2) -> InvariantReport:
    """Canonicalize, compute S/sigma/eigenvalues, cross-check all routes."""
    canonical = canonicalize(jet)
    S = traces(canonical)
    sigma = elementary_from_traces(S)
    lam = canonical.eigenvalues
    # Newton cross-check: sigma from traces vs sigma from the spectrum
    sigma_eig = _elementary_from_eigenvalues(lam)
    newton_residual = max(
        abs(a - b) / max(1.0, abs(a)) for a, b in zip(sigma, sigma_eig)
    )
    if jet.n == 4:
        D = [D1_closed(jet), D2_closed(jet), D3_closed(jet)]
    else:
        D = [Dn_closed(jet)]
    residuals = [
        abs(S[k] - TRACE_SIGN ** (k + 1) * D[k]) / max(1.0, abs(S[k]))
        for k in range(len(D))
        if k < len(S)
    ]
    return InvariantReport(
        n=jet.n,
        S=S,
        sigma=sigma,
        eigenvalues=[float(x) for x in lam],
        D_closed=[float(x) for x in D],
        newton_residual=float(newton_residual),
        closed_form_residuals=[float(r) for r in residuals],
    )


def _elementary_from_eigenvalues(lam: np.ndarray) -> list[float]:
    coeffs = [1.0]
    for x in lam:
        coeffs = [c + 0.0 for c in coeffs] + [0.0]
        for i in range(len(coeffs) - 1, 0, -1):
            coeffs[i] += coeffs[i - 1] * (-x)
    # charpoly prod (t - lam_i) = sum coeffs[i] t^{k-i}; sigma_k = (-1)^k coeffs[k]
    return [((-1) ** k) * coeffs[k] for k in range(1, len(coeffs))]
