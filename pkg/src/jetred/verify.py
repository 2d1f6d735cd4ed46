"""Seeded verification suites: randomized invariance and consistency checks.

Each check draws every trial from ``numpy.random.default_rng((master_seed,
salt, trial_index))``, so reports are reproducible bit for bit from the
command-line flags alone.  A check records its tolerance, the worst residual
seen and one entry per failing trial; a suite aggregates checks.

The two suites:

``mobius``
    exact invariance identity for the w-family, full-group invariance of the
    order-3/4 operators on jets of real functions, Schwarzian vanishing on
    fractional-linear maps, canonical-representative normalization, and the
    rank of the invariant family's Jacobian.

``minkowski``
    sign pinning on the canonical family, trace-vs-closed-form consistency,
    stabilizer and full conformal invariance of the traces, boost
    certification, the special-conformal group law, the first-order quotient
    point, Jacobian rank of the traces, the chain-rule oracle, and coherence
    of the general-n first invariant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import conformal as cf
from . import functions as fn
from . import mobius as mb
from . import reduction as rd
from .errors import DomainError
from .exact import LaurentPolynomial
from .minkowski import Metric, ScalarJet2, dilatation_action, lorentz_action, sct_action

MAX_SAMPLING_ATTEMPTS = 500

#: Conditioning guards for random timelike sampling: reject gradients with
#: |u^2| below COND times |u|^2 or norm below MIN_GRADIENT_NORM.
TIMELIKE_COND = 1e-3
MIN_GRADIENT_NORM = 0.2


@dataclass
class CheckResult:
    name: str
    trials: int
    tolerance: float
    max_residual: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, trial: int, residual: float, detail: str = "") -> None:
        residual = float(residual)
        self.max_residual = max(self.max_residual, residual)
        if residual > self.tolerance:
            entry = {"trial": trial, "residual": residual}
            if detail:
                entry["detail"] = detail
            self.failures.append(entry)

    def fail(self, trial: int, detail: str) -> None:
        self.failures.append({"trial": trial, "residual": float("nan"), "detail": detail})

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "tolerance": self.tolerance,
            "max_residual": self.max_residual,
            "failures": self.failures,
            "passed": self.passed,
        }


@dataclass
class VerificationReport:
    suite: str
    seed: int
    trials: int
    dim: int | None
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.max_residual for c in self.checks), default=0.0)

    def as_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "checks": [c.as_dict() for c in self.checks],
            "max_residual": self.max_residual,
            "passed": self.passed,
        }
        if self.dim is not None:
            out["dim"] = self.dim
        return out


def _rng(master: int, salt: int, trial: int) -> np.random.Generator:
    return np.random.default_rng((master, salt, trial))


def _rel(delta: float, reference: float) -> float:
    return abs(delta) / max(1.0, abs(reference))


def numerical_rank(jacobian: np.ndarray, threshold: float = 1e-8) -> int:
    """Rank by SVD with rows equilibrated first (row scaling preserves rank).

    Without equilibration the wildly different natural scales of the rows
    (w6 carries u1^-10 where w3 carries u1^-3) would drown genuine
    independence in floating-point dynamic range.
    """
    norms = np.linalg.norm(jacobian, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    sv = np.linalg.svd(jacobian / norms, compute_uv=False)
    return int(np.sum(sv > threshold * sv[0]))


# ---------------------------------------------------------------------------
# samplers


def sample_timelike_jet(
    rng: np.random.Generator, n: int, cond: float = TIMELIKE_COND
) -> ScalarJet2:
    """Well-conditioned random timelike jet, coefficients uniform on [-2, 2]."""
    m = Metric(n)
    for _ in range(MAX_SAMPLING_ATTEMPTS):
        u = rng.uniform(-2, 2, size=n)
        if np.linalg.norm(u) < MIN_GRADIENT_NORM:
            continue
        if m.inner(u, u) >= -cond * float(u @ u):
            continue
        raw = rng.uniform(-2, 2, size=(n, n))
        return ScalarJet2(u, (raw + raw.T) / 2.0)
    raise RuntimeError("timelike jet sampling exhausted")


def sample_mobius(rng: np.random.Generator) -> mb.Mobius:
    for _ in range(MAX_SAMPLING_ATTEMPTS):
        a, b, c, d = rng.uniform(-2, 2, size=4)
        det = a * d - b * c
        if abs(det) >= 0.1:
            # det-normalize: same projective map, far better conditioning
            s = 1.0 / np.sqrt(abs(det))
            return mb.Mobius(float(a * s), float(b * s), float(c * s), float(d * s))
    raise RuntimeError("Mobius sampling exhausted")


def sample_strong_timelike_jet(rng: np.random.Generator, n: int) -> ScalarJet2:
    """Jet with -u^2 bounded well away from zero, built constructively.

    Used by the rank checks: close to the light cone the canonicalized block
    acquires a large common diagonal part and the trace differentials become
    numerically parallel, which would masquerade as rank loss.
    """
    u0 = float(rng.choice([-1.0, 1.0]) * rng.uniform(1.0, 2.0))
    spatial = rng.uniform(-0.25, 0.25, size=n - 1)
    u = np.concatenate([[u0], spatial])
    raw = rng.uniform(-2, 2, size=(n, n))
    return ScalarJet2(u, (raw + raw.T) / 2.0)


def sample_quadratic_timelike_at(
    rng: np.random.Generator, n: int, x: np.ndarray
) -> fn.PolynomialFunction:
    """Random degree-2 polynomial whose gradient at x is well-conditioned timelike."""
    m = Metric(n)
    for _ in range(MAX_SAMPLING_ATTEMPTS):
        coeffs: dict[tuple[int, ...], float] = {}
        for i in range(n):
            exps = [0] * n
            exps[i] = 1
            coeffs[tuple(exps)] = float(rng.uniform(-2, 2))
            for j in range(i, n):
                exps2 = [0] * n
                exps2[i] += 1
                exps2[j] += 1
                coeffs[tuple(exps2)] = float(rng.uniform(-1, 1))
        f = fn.PolynomialFunction(n, coeffs)
        grad = f.gradient(x)
        if np.linalg.norm(grad) < MIN_GRADIENT_NORM:
            continue
        if m.inner(grad, grad) < -TIMELIKE_COND * float(grad @ grad):
            return f
    raise RuntimeError("quadratic sampling exhausted")


def _stabilizer_step(rng: np.random.Generator, jet: ScalarJet2, n: int) -> ScalarJet2:
    kind = int(rng.integers(0, 3))
    if kind == 0:
        return dilatation_action(jet, float(np.exp(rng.uniform(-1, 1))))
    if kind == 1:
        g = cf.random_element(seed=rng.integers(0, 2**32), max_word_len=1, scale=0.5, n=n)
        for gen in g.word:
            if isinstance(gen, cf.LorentzRotation):
                return lorentz_action(jet, gen.matrix)
        vvec = 0.5 * rng.uniform(-1, 1, size=n - 1)
        v = np.concatenate([[np.sqrt(1.0 + vvec @ vvec)], vvec])
        return lorentz_action(jet, rd.boost_to_e0(v))
    return sct_action(jet, rng.uniform(-0.5, 0.5, size=n))


# ---------------------------------------------------------------------------
# mobius checks


def check_symbolic_identity(seed: int, trials: int, tol: float = 0.0, k_max: int = 6) -> CheckResult:
    """canonical_projection∘stabilizer_action == canonical_projection, exactly."""
    result = CheckResult("symbolic-invariance-identity", k_max - 2, tol)
    for k in range(3, k_max + 1):
        variables = ("a", "c") + tuple(f"u{l}" for l in range(1, k + 1))
        h = mb.MobiusStabilizer(
            LaurentPolynomial.variable(variables, "a"),
            LaurentPolynomial.variable(variables, "c"),
        )
        generic = mb.jet_from_derivatives(
            [LaurentPolynomial.variable(variables, f"u{l}") for l in range(1, k + 1)]
        )
        acted = mb.canonical_projection(mb.stabilizer_action(generic, h))
        plain = mb.canonical_projection(generic)
        defect = sum(0 if (p - q).is_zero() else 1 for p, q in zip(acted, plain))
        result.record(k, float(defect), detail=f"k={k}: {defect} nonzero differences")
    return result


def check_mobius_invariance(seed: int, trials: int, tol: float = 1e-9) -> CheckResult:
    """D1 and D2 on the jet of f∘g at z0 equal their values on the jet of f at g(z0)."""
    result = CheckResult("full-group-invariance-d1-d2", trials, tol)
    for trial in range(trials):
        rng = _rng(seed, 101, trial)
        sampled = False
        for _ in range(MAX_SAMPLING_ATTEMPTS):
            g = sample_mobius(rng)
            z0 = float(rng.uniform(-1, 1))
            if abs(g.c * z0 + g.d) < 0.2:
                continue
            y0 = g(z0)
            if abs(y0) > 20:
                continue
            f = fn.UnivariatePolynomial(tuple(float(c) for c in rng.uniform(-2, 2, size=5)))
            deriv = f.derivative()(y0)
            if abs(deriv) < 0.2:
                continue
            sampled = True
            break
        if not sampled:
            result.fail(trial, "sampling exhausted")
            continue
        direct = fn.jetk_of(f, y0, 4)
        chained = mb.pullback_jet(direct, mb.mobius_jet_at(g, z0, 4))
        r1 = _rel(mb.eval_D1(chained) - mb.eval_D1(direct), mb.eval_D1(direct))
        r2 = _rel(mb.eval_D2(chained) - mb.eval_D2(direct), mb.eval_D2(direct))
        result.record(trial, max(r1, r2))
    return result


def check_schwarzian_vanishing(seed: int, trials: int, tol: float = 1e-12) -> CheckResult:
    """eval_D1 vanishes on jets of fractional-linear maps.

    The tolerance is absolute, so the sampler bounds the cancellation scale
    6 c^2 (c z0 + d)^2 (with det normalized to +-1 the rounding residual then
    stays two orders below 1e-12).
    """
    result = CheckResult("schwarzian-vanishing", trials, tol)
    for trial in range(trials):
        rng = _rng(seed, 102, trial)
        for _ in range(MAX_SAMPLING_ATTEMPTS):
            g = sample_mobius(rng)
            z0 = float(rng.uniform(-1, 1))
            if abs(g.c) <= 3.0 and 0.4 <= abs(g.c * z0 + g.d) <= 2.5:
                break
        jet = fn.jetk_of(fn.MobiusFunction(g.a, g.b, g.c, g.d), z0, 3)
        result.record(trial, abs(mb.eval_D1(jet)))
    return result


def check_canonical_representative(seed: int, trials: int, tol: float = 1e-12) -> CheckResult:
    """The float-mode representative has w1 = 1 and w2 = 0 to 1e-12."""
    result = CheckResult("canonical-representative", trials, tol)
    for trial in range(trials):
        rng = _rng(seed, 103, trial)
        for _ in range(MAX_SAMPLING_ATTEMPTS):
            derivs = rng.uniform(-2, 2, size=5)
            if abs(derivs[0]) >= 0.3:
                break
        rep = mb.canonical_representative(mb.jet_from_derivatives([float(x) for x in derivs]))
        w = mb.derivatives_from_jet(rep)
        result.record(trial, max(abs(w[0] - 1.0), abs(w[1])))
    return result


def check_mobius_rank(seed: int, trials: int, tol: float = 0.0, k: int = 6) -> CheckResult:
    """Jacobian of (w3..wk) w.r.t. (u1..uk) has rank k-2 at random points."""
    points = max(trials, 50)
    result = CheckResult("independence-rank", points, tol)
    family = mb.symbolic_invariants(k)
    names = [f"u{l}" for l in range(1, k + 1)]
    grads = [[w.derivative(nm) for nm in names] for w in family.symbols]
    for trial in range(points):
        rng = _rng(seed, 104, trial)
        for _ in range(MAX_SAMPLING_ATTEMPTS):
            values = {nm: float(x) for nm, x in zip(names, rng.uniform(-2, 2, size=k))}
            if abs(values["u1"]) >= 0.5:
                break
        jac = np.array([[float(g.evaluate(values)) for g in row] for row in grads])
        rank = numerical_rank(jac)
        result.record(trial, 0.0 if rank == k - 2 else 1.0, detail=f"rank {rank} != {k - 2}")
    return result


# ---------------------------------------------------------------------------
# minkowski checks


def check_canonical_family_sign(seed: int, trials: int, tol: float = 1e-12) -> CheckResult:
    """Pin S_k = (-1)^k D_k on jets already in canonical form (n = 4)."""
    result = CheckResult("canonical-family-sign", trials, tol)
    e0 = np.array([1.0, 0, 0, 0])
    for trial in range(trials):
        rng = _rng(seed, 200, trial)
        lam = rng.uniform(-2, 2, size=3)
        jet = ScalarJet2(e0, np.diag(np.concatenate([[0.0], lam])))
        S = [float(np.sum(lam ** kk)) for kk in (1, 2, 3)]  # brute force on the spectrum
        D = [rd.D1_closed(jet), rd.D2_closed(jet), rd.D3_closed(jet)]
        worst = max(
            _rel(S[i] - rd.TRACE_SIGN ** (i + 1) * D[i], S[i]) for i in range(3)
        )
        result.record(trial, worst)
    return result


def check_pipeline_closed_form(seed: int, trials: int, tol: float = 1e-8) -> CheckResult:
    """Traces of the canonicalized jet match the closed forms, S_k = (-1)^k D_k."""
    result = CheckResult("pipeline-closed-form", trials, tol)
    for trial in range(trials):
        rng = _rng(seed, 201, trial)
        jet = sample_timelike_jet(rng, 4)
        S = rd.traces(rd.canonicalize(jet))
        D = [rd.D1_closed(jet), rd.D2_closed(jet), rd.D3_closed(jet)]
        worst = max(
            _rel(S[i] - rd.TRACE_SIGN ** (i + 1) * D[i], S[i]) for i in range(3)
        )
        result.record(trial, worst)
    return result


def check_stabilizer_invariance(seed: int, trials: int, tol: float = 1e-6, n: int = 4) -> CheckResult:
    """Traces are unchanged under random origin-fixing words on the fibre."""
    result = CheckResult("stabilizer-invariance", trials, tol)
    for trial in range(trials):
        rng = _rng(seed, 202, trial)
        jet = sample_timelike_jet(rng, n)
        S_ref = rd.traces(rd.canonicalize(jet))
        acted = jet
        for _ in range(int(rng.integers(1, 4))):
            acted = _stabilizer_step(rng, acted, n)
        try:
            S_act = rd.traces(rd.canonicalize(acted))
        except DomainError as exc:
            result.fail(trial, f"canonicalize failed after action: {exc}")
            continue
        worst = max(_rel(a - b, b) for a, b in zip(S_act, S_ref))
        result.record(trial, worst)
    return result


def check_full_group_invariance(seed: int, trials: int, tol: float = 1e-6, n: int = 4) -> CheckResult:
    """S_k of j2(f∘g) at x equals S_k of j2(f) at g(x) for real quadratics."""
    result = CheckResult("full-group-invariance", trials, tol)
    m = Metric(n)
    for trial in range(trials):
        rng = _rng(seed, 203, trial)
        sampled = None
        for _ in range(MAX_SAMPLING_ATTEMPTS):
            g = cf.random_element(seed=rng.integers(0, 2**32), max_word_len=4, scale=0.3, n=n)
            x = rng.uniform(-0.5, 0.5, size=n)
            try:
                y = cf.apply_point(g, x)
                f = sample_quadratic_timelike_at(rng, n, y)
                jet_y = fn.jet2_of(f, y)
                phi = cf.map_jet2_at(g, x)
                jet_x = cf.pullback_scalar_jet(jet_y, phi)
            except (DomainError, RuntimeError):
                continue
            grad = jet_x.u
            if np.linalg.norm(grad) < MIN_GRADIENT_NORM:
                continue
            if m.inner(grad, grad) >= -TIMELIKE_COND * float(grad @ grad):
                continue
            sampled = (jet_x, jet_y)
            break
        if sampled is None:
            result.fail(trial, "sampling exhausted")
            continue
        jet_x, jet_y = sampled
        S_x = rd.traces(rd.canonicalize(jet_x))
        S_y = rd.traces(rd.canonicalize(jet_y))
        worst = max(_rel(a - b, b) for a, b in zip(S_x, S_y))
        result.record(trial, worst)
    return result


def check_boost_certification(seed: int, trials: int, tol: float = 1e-10, n: int = 4) -> CheckResult:
    """A^T eta A = eta and A v = e0 for random unit timelike v, plus v_vec = 0."""
    result = CheckResult("boost-certification", trials, tol)
    m = Metric(n)
    eta = m.eta
    e0 = np.zeros(n)
    e0[0] = 1.0
    for trial in range(trials):
        rng = _rng(seed, 204, trial)
        if trial == 0:
            v = e0.copy()  # degenerate branch exercised explicitly
        else:
            vvec = rng.uniform(-2, 2, size=n - 1)
            v = np.concatenate([[np.sqrt(1.0 + vvec @ vvec)], vvec])
        A = rd.boost_to_e0(v, m)
        residual = max(
            float(np.abs(A.T @ eta @ A - eta).max()), float(np.abs(A @ v - e0).max())
        )
        result.record(trial, residual)
    return result


def check_sct_group_law(seed: int, trials: int, tol: float = 1e-10, n: int = 4) -> CheckResult:
    """sct(b1) then sct(b2) equals sct(b1 + b2) on the fibre."""
    result = CheckResult("sct-group-law", trials, tol)
    for trial in range(trials):
        rng = _rng(seed, 205, trial)
        raw = rng.uniform(-2, 2, size=(n, n))
        jet = ScalarJet2(rng.uniform(-2, 2, size=n), (raw + raw.T) / 2.0)
        b1 = rng.uniform(-1, 1, size=n)
        b2 = rng.uniform(-1, 1, size=n)
        two = sct_action(sct_action(jet, b1), b2)
        one = sct_action(jet, b1 + b2)
        residual = max(
            float(np.abs(two.u - one.u).max()), float(np.abs(two.u2 - one.u2).max())
        )
        result.record(trial, residual)
    return result


def check_first_order_point(seed: int, trials: int, tol: float = 1e-12, n: int = 4) -> CheckResult:
    """Any timelike jet with zero Hessian canonicalizes to w~ = 0."""
    result = CheckResult("first-order-quotient-point", trials, tol)
    m = Metric(n)
    for trial in range(trials):
        rng = _rng(seed, 206, trial)
        for _ in range(MAX_SAMPLING_ATTEMPTS):
            u = rng.uniform(-2, 2, size=n)
            if m.inner(u, u) < -TIMELIKE_COND * float(u @ u) and np.linalg.norm(u) > MIN_GRADIENT_NORM:
                break
        canonical = rd.canonicalize(ScalarJet2(u, np.zeros((n, n))))
        result.record(trial, float(np.abs(canonical.w_tilde).max()))
    return result


def check_trace_rank(seed: int, trials: int, tol: float = 0.0, n: int = 4) -> CheckResult:
    """Jacobian of (S_1..S_{n-1}) over the jet coordinates has rank n-1."""
    points = max(trials, 50)
    result = CheckResult("independence-rank", points, tol)
    h = 1e-5
    n_coords = n + n * (n + 1) // 2
    for trial in range(points):
        rng = _rng(seed, 207, trial)
        jet = sample_strong_timelike_jet(rng, n)

        def s_of(vec: np.ndarray) -> np.ndarray:
            u = vec[:n]
            u2 = np.zeros((n, n))
            idx = n
            for i in range(n):
                for j in range(i, n):
                    u2[i, j] = u2[j, i] = vec[idx]
                    idx += 1
            return np.array(rd.traces(rd.canonicalize(ScalarJet2(u, u2))))

        vec0 = np.concatenate([jet.u, [jet.u2[i, j] for i in range(n) for j in range(i, n)]])
        jac = np.zeros((n - 1, n_coords))
        for col in range(n_coords):
            e = np.zeros(n_coords)
            e[col] = h
            jac[:, col] = (s_of(vec0 + e) - s_of(vec0 - e)) / (2 * h)
        rank = numerical_rank(jac)
        result.record(trial, 0.0 if rank == n - 1 else 1.0, detail=f"rank {rank} != {n - 1}")
    return result


def check_chain_rule_oracle(seed: int, trials: int, tol: float = 1e-8, n: int = 4) -> CheckResult:
    """Forward-arithmetic 2-jet of f∘g matches the pullback route."""
    result = CheckResult("chain-rule-oracle", trials, tol)
    for trial in range(trials):
        rng = _rng(seed, 208, trial)
        sampled = None
        for _ in range(MAX_SAMPLING_ATTEMPTS):
            g = cf.random_element(seed=rng.integers(0, 2**32), max_word_len=3, scale=0.3, n=n)
            x = rng.uniform(-0.5, 0.5, size=n)
            coeffs = {}
            for _ in range(8):
                exps = tuple(int(e) for e in rng.integers(0, 3, size=n))
                if 1 <= sum(exps) <= 4:
                    coeffs[exps] = float(rng.uniform(-2, 2))
            if not coeffs:
                continue
            f = fn.PolynomialFunction(n, coeffs)
            try:
                y = cf.apply_point(g, x)
                direct = fn.jet2_of_pulled_back(f, g, x)
                pulled = cf.pullback_scalar_jet(fn.jet2_of(f, y), cf.map_jet2_at(g, x))
            except DomainError:
                continue
            sampled = (direct, pulled)
            break
        if sampled is None:
            result.fail(trial, "sampling exhausted")
            continue
        direct, pulled = sampled
        scale = max(1.0, float(np.abs(pulled.u).max()), float(np.abs(pulled.u2).max()))
        residual = max(
            float(np.abs(direct.u - pulled.u).max()), float(np.abs(direct.u2 - pulled.u2).max())
        ) / scale
        result.record(trial, residual)
    return result


def check_dn_coherence(seed: int, trials: int, tol: float = 1e-6, n: int = 5) -> CheckResult:
    """n=4: Dn == D1 to 1e-12; general n: Dn invariant under random words."""
    result = CheckResult("dn-coherence", trials, tol)
    m = Metric(n)
    for trial in range(trials):
        rng = _rng(seed, 209, trial)
        if n == 4:
            jet = sample_timelike_jet(rng, 4)
            result.record(trial, _rel(rd.Dn_closed(jet) - rd.D1_closed(jet), rd.D1_closed(jet)))
            continue
        sampled = None
        for _ in range(MAX_SAMPLING_ATTEMPTS):
            g = cf.random_element(seed=rng.integers(0, 2**32), max_word_len=3, scale=0.25, n=n)
            x = rng.uniform(-0.5, 0.5, size=n)
            try:
                y = cf.apply_point(g, x)
                f = sample_quadratic_timelike_at(rng, n, y)
                jet_y = fn.jet2_of(f, y)
                jet_x = cf.pullback_scalar_jet(jet_y, cf.map_jet2_at(g, x))
            except (DomainError, RuntimeError):
                continue
            grad = jet_x.u
            if np.linalg.norm(grad) < MIN_GRADIENT_NORM:
                continue
            if m.inner(grad, grad) >= -TIMELIKE_COND * float(grad @ grad):
                continue
            sampled = (jet_x, jet_y)
            break
        if sampled is None:
            result.fail(trial, "sampling exhausted")
            continue
        jet_x, jet_y = sampled
        result.record(trial, _rel(rd.Dn_closed(jet_x) - rd.Dn_closed(jet_y), rd.Dn_closed(jet_y)))
    return result


# ---------------------------------------------------------------------------
# suites


def run_mobius_suite(seed: int, trials: int, tol: float | None = None) -> VerificationReport:
    checks = [
        check_symbolic_identity(seed, trials, **_tol(tol, 0.0)),
        check_mobius_invariance(seed, trials, **_tol(tol, 1e-9)),
        check_schwarzian_vanishing(seed, min(trials, 100), **_tol(tol, 1e-12)),
        check_canonical_representative(seed, trials, **_tol(tol, 1e-12)),
        check_mobius_rank(seed, min(trials, 50), **_tol(tol, 0.0)),
    ]
    return VerificationReport("mobius", seed, trials, None, checks)


def run_minkowski_suite(
    seed: int, trials: int, dim: int = 4, tol: float | None = None
) -> VerificationReport:
    checks = [
        check_boost_certification(seed, trials, n=dim, **_tol(tol, 1e-10)),
        check_sct_group_law(seed, min(trials, 200), n=dim, **_tol(tol, 1e-10)),
        check_first_order_point(seed, min(trials, 100), n=dim, **_tol(tol, 1e-12)),
        check_stabilizer_invariance(seed, trials, n=dim, **_tol(tol, 1e-6)),
        check_full_group_invariance(seed, trials, n=dim, **_tol(tol, 1e-6)),
        check_chain_rule_oracle(seed, min(trials, 200), n=dim, **_tol(tol, 1e-8)),
        check_trace_rank(seed, min(trials, 50), n=dim, **_tol(tol, 0.0)),
    ]
    if dim == 4:
        checks.insert(0, check_canonical_family_sign(seed, min(trials, 200), **_tol(tol, 1e-12)))
        checks.insert(1, check_pipeline_closed_form(seed, trials, **_tol(tol, 1e-8)))
        checks.append(check_dn_coherence(seed, min(trials, 200), n=4, **_tol(tol, 1e-12)))
    else:
        checks.append(check_dn_coherence(seed, min(trials, 500), n=dim, **_tol(tol, 1e-6)))
    return VerificationReport("minkowski", seed, trials, dim, checks)


def _tol(override: float | None, default: float) -> dict:
    return {"tol": default if override is None else override}
