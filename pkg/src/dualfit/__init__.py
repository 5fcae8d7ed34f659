"""Line fitting that balances squared vertical against squared horizontal errors."""

from .core import (
    Dataset,
    FitConfig,
    FittedLine,
    Quartic,
    SufficientStats,
    build_quartic,
    compute_stats,
    fit,
    fit_stats,
    intercept,
    inverse_predict,
    predict,
    real_roots,
    select_slope,
    slope_bounds,
    sse,
    sse_gradient,
)
from .errors import (
    BracketFailure,
    DegenerateData,
    DualFitError,
    InvalidInput,
    NoAdmissibleRoot,
    NonPositiveCorrelation,
    ParseError,
    SingularSlope,
    SolverFailure,
    ZeroCorrelation,
)
from .oracle import OracleReport, check_gradient, minimize_profile, profile_sse, verify_fit

__version__ = "0.1.0"

__all__ = [
    "BracketFailure",
    "Dataset",
    "DegenerateData",
    "DualFitError",
    "FitConfig",
    "FittedLine",
    "InvalidInput",
    "NoAdmissibleRoot",
    "NonPositiveCorrelation",
    "OracleReport",
    "ParseError",
    "Quartic",
    "SingularSlope",
    "SolverFailure",
    "SufficientStats",
    "ZeroCorrelation",
    "build_quartic",
    "check_gradient",
    "compute_stats",
    "fit",
    "fit_stats",
    "intercept",
    "inverse_predict",
    "minimize_profile",
    "predict",
    "profile_sse",
    "real_roots",
    "select_slope",
    "slope_bounds",
    "sse",
    "sse_gradient",
    "verify_fit",
]
