"""Numerical calculus over finite-dimensional real unital associative algebras.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (  # noqa: F401
    Algebra,
    AlgebraError,
    CRReport,
    Element,
    GeneratedAlgebra,
    IdentityReport,
    PowerSeries,
    PythagoreanEvaluation,
    RadiusReport,
    RegionScan,
    SpecialFunctionTable,
    SumResult,
    SumStatus,
    build_algebra,
    classify,
    cos,
    cosh,
    cr_residual,
    derivative_series,
    detect_generated,
    estimate_radii,
    eval_series,
    eval_truncated,
    exp,
    geometric_check,
    identity_suite,
    inverse,
    load_algebra,
    loop_integral_circle,
    mul,
    n_hyperbolic,
    n_trig,
    numeric_jacobian,
    preset,
    product_series,
    pythagorean,
    region_scan,
    regular_rep,
    segment_integral,
    sin,
    sinh,
    special_functions,
    sum_series,
    uniform_tail_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
