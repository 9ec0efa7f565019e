"""gramlab: Riemann-Siegel functions, Gram points, zero scans and
Gram's Law statistics at desk scale."""

from .kernels import BACKEND
from .special import (
    ThetaValue,
    ZValue,
    theta,
    theta_deriv,
    theta_many,
    z,
    z_many,
    zeta_euler_maclaurin,
)
from .gram import (
    GramPoint,
    GramRange,
    gram_point,
    gram_range,
    interval_length_stats,
)
from .zeros import (
    ZeroCensus,
    ZeroOrdinate,
    count_estimate,
    load_census,
    refine_zero,
    save_census,
    scan_zeros,
)
from .classify import (
    ClassificationReport,
    GramInterval,
    classify,
    decay_profile,
    report,
    report_from_json,
    report_to_json,
)
from .moments import (
    MomentEstimate,
    SFunction,
    build_s,
    eval_s,
    korolev_shift,
    leading_term,
    moment_growth_check,
    shifted_moment,
    write_moment_table,
)
from .cache import ZeroCache
from .errors import (
    AuditError,
    CacheError,
    DomainError,
    GramlabError,
    NonConvergenceError,
    ResourceError,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ThetaValue",
    "ZValue",
    "theta",
    "theta_deriv",
    "theta_many",
    "z",
    "z_many",
    "zeta_euler_maclaurin",
    "GramPoint",
    "GramRange",
    "gram_point",
    "gram_range",
    "interval_length_stats",
    "ZeroCensus",
    "ZeroOrdinate",
    "count_estimate",
    "load_census",
    "refine_zero",
    "save_census",
    "scan_zeros",
    "ClassificationReport",
    "GramInterval",
    "classify",
    "decay_profile",
    "report",
    "report_from_json",
    "report_to_json",
    "MomentEstimate",
    "SFunction",
    "build_s",
    "eval_s",
    "korolev_shift",
    "leading_term",
    "moment_growth_check",
    "shifted_moment",
    "write_moment_table",
    "ZeroCache",
    "GramlabError",
    "DomainError",
    "NonConvergenceError",
    "AuditError",
    "CacheError",
    "ResourceError",
    "__version__",
]
