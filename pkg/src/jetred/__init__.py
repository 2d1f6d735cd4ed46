"""jetred: complete systems of conformally invariant differential operator symbols.

Two pipelines behind one idea (canonical forms on jet fibres):

* the analytic case: exact Laurent-polynomial invariants w3..wk of univariate
  jets under fractional-linear changes of variable (:mod:`jetred.mobius`,
  :mod:`jetred.exact`);
* the pseudo-Euclidean case: trace invariants S_k of 2-jets with timelike
  gradient under the conformal group, with closed-form counterparts
  (:mod:`jetred.minkowski`, :mod:`jetred.reduction`, :mod:`jetred.conformal`).

Randomized, seeded verification suites live in :mod:`jetred.verify`; the
command-line interface in :mod:`jetred.cli`.
"""

__version__ = "0.1.0"

from .errors import DomainError, InvariantSubspaceError, NonTimelikeGradient, SingularPoint
from .exact import (
    INVERTIBLE_SYMBOLS,
    LaurentPolynomial,
    PointedSeries,
    Rational,
    TruncatedSeries,
    series_compose,
    series_mul,
    series_reciprocal_shifted,
)
from .mobius import (
    InvariantSymbolFamily,
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
from .minkowski import (
    Map2Jet,
    Metric,
    ScalarJet2,
    compose_map2,
    diffeo_action,
    dilatation_action,
    inner,
    lorentz_action,
    lower_index,
    raise_index,
    sct_action,
    sct_map2,
)
from .reduction import (
    CanonicalJet,
    D1_closed,
    D2_closed,
    D3_closed,
    Dn_closed,
    GradientFrame,
    InvariantReport,
    boost_to_e0,
    build_report,
    canonicalize,
    eigen_spatial,
    elementary_from_traces,
    gradient_frame,
    normalize_dilatation,
    sct_cancel,
    traces,
)
from .conformal import (
    ConformalElement,
    Dilatation,
    LorentzRotation,
    MultiPoly2,
    SpecialConformal,
    Translation,
    apply_point,
    map_jet2_at,
    parse_word,
    pullback_scalar_jet,
    random_element,
)
from .functions import (
    ComposedQuadratic,
    MobiusFunction,
    PolynomialFunction,
    UnivariatePolynomial,
    jet2_of,
    jet2_of_pulled_back,
    jetk_of,
)
