"""Best uniform approximation by generalized rational and quasilinear
families, via bisection on the deviation level with convex feasibility
tests at each level."""

from .analysis import (
    DomainSkip,
    ErrorCurve,
    ExtremaReport,
    check_quasiconvexity_sample,
    count_alternations,
    deviation_function,
    error_curve,
)
from .basis import (
    BasisSet,
    BasisSpecError,
    Constant,
    Monomial,
    TruncatedPower,
    eval_basis,
    eval_set,
    format_basis,
    parse_basis,
    parse_basis_set,
)
from .bisection import (
    BisectionConfig,
    FitResult,
    IterationLimit,
    NoFeasibleLevel,
    bisect,
    fit_hinge,
    fit_rational,
    init_bounds,
)
from .feasibility import (
    FeasibilityOutcome,
    HingeProblem,
    LpFailure,
    build_feasibility_lp,
    check_level_hinge,
    check_level_rational,
)
from .model import (
    Coefficients,
    EmptyInterval,
    Grid,
    InsufficientSamples,
    RationalModel,
    SampledTarget,
    ZeroDenominator,
    build_grid,
    eval_model,
    load_samples_csv,
    max_deviation,
    sqrt_abs_shift,
)
from .simplex import (
    LinearProgram,
    LpSolution,
    MaxIterationsError,
    solve_lp,
)

__version__ = "0.1.0"

__all__ = [
    "BasisSet",
    "BasisSpecError",
    "BisectionConfig",
    "Coefficients",
    "Constant",
    "DomainSkip",
    "EmptyInterval",
    "ErrorCurve",
    "ExtremaReport",
    "FeasibilityOutcome",
    "FitResult",
    "Grid",
    "HingeProblem",
    "InsufficientSamples",
    "IterationLimit",
    "LinearProgram",
    "LpFailure",
    "LpSolution",
    "MaxIterationsError",
    "Monomial",
    "NoFeasibleLevel",
    "RationalModel",
    "SampledTarget",
    "TruncatedPower",
    "ZeroDenominator",
    "bisect",
    "build_feasibility_lp",
    "build_grid",
    "check_level_hinge",
    "check_level_rational",
    "check_quasiconvexity_sample",
    "count_alternations",
    "deviation_function",
    "error_curve",
    "eval_basis",
    "eval_model",
    "eval_set",
    "fit_hinge",
    "fit_rational",
    "format_basis",
    "init_bounds",
    "load_samples_csv",
    "max_deviation",
    "parse_basis",
    "parse_basis_set",
    "solve_lp",
    "sqrt_abs_shift",
]
