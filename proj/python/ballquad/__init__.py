"""Rigorous arbitrary-precision integration in ball arithmetic."""

from ._ballquad import (
    ComplexBox,
    IntegrationResult,
    RealBall,
    abs_ext,
    atan,
    bench_cases,
    bench_run,
    ceil_ext,
    cos,
    exp,
    floor_ext,
    integrate,
    log,
    log_analytic,
    max_ext,
    min_ext,
    sech,
    sgn_ext,
    sin,
    sqrt,
    sqrt_analytic,
)

__all__ = [
    "ComplexBox",
    "IntegrationResult",
    "RealBall",
    "abs_ext",
    "atan",
    "bench_cases",
    "bench_run",
    "ceil_ext",
    "cos",
    "exp",
    "floor_ext",
    "integrate",
    "log",
    "log_analytic",
    "max_ext",
    "min_ext",
    "sech",
    "sgn_ext",
    "sin",
    "sqrt",
    "sqrt_analytic",
]
