"""Gumbel-domain extremes: exact scaled-maximum laws, accompanying
approximations with power-rate convergence, and rate measurement tools."""

from .analysis import (
    AtPoint,
    ErrorCurve,
    RateFit,
    SupOnGrid,
    empirical_cdf,
    error_curve,
    evaluation_points,
    fit_rate,
    simulate_max,
    weighted_residual,
)
from .approx import (
    Accompanying,
    ApproximantKind,
    EvalPoint,
    FirstOrderCorrected,
    Gumbel,
    SecondOrder,
    TwoTerm,
    accompanying_law,
    evaluate,
    exact_max_cdf,
    first_order_corrected,
    gumbel_cdf,
    h_function,
    second_order_approx,
    sigma_series,
    two_term,
)
from .errors import (
    ConvergenceError,
    DegenerateError,
    DivergenceError,
    DomainError,
    EvtError,
    MismatchError,
    ParseError,
    QuadratureError,
)
from .gamma import (
    GammaValue,
    correction_generalized_weibull,
    correction_logweibull,
    correction_weibull_like,
    gamma_closed_weibull,
    gamma_exact,
    gamma_quadrature,
    logweibull_alpha_fn,
    weibull_alpha_fn,
)
from .norming import (
    NormingPair,
    asymptotic_iterate,
    norming_exact,
    norming_logweibull_closed,
    norming_weibull_closed,
    types_equivalence_gap,
)
from .tails import (
    DistributionSpec,
    ExponentialUnit,
    GeneralizedVonMises,
    IteratedLogScale,
    LogWeibullLike,
    SlowlyVarying,
    WeibullLike,
    parse_dist,
)

__version__ = "0.1.0"
