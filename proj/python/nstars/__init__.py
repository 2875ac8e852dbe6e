"""N-stars network evolution model: limit formulas, simulation and Taylor's law fits."""

from ._nstars import (
    ConditionReport,
    DerivedParams,
    InsufficientData,
    InvariantViolation,
    ModelParams,
    NStarsError,
    check_conditions,
    conditional_moments,
    derive,
    expectation,
    finite_gamma_sum,
    infinite_gamma_sum,
    joint_table,
    log_gamma_ratio,
    loglog_fit,
    marginal,
    second_moment,
    simulate,
    swap_roles,
    tail_coefficients,
    taylor_constant,
)

__version__ = "0.1.0"

__all__ = [
    "ConditionReport",
    "DerivedParams",
    "InsufficientData",
    "InvariantViolation",
    "ModelParams",
    "NStarsError",
    "check_conditions",
    "conditional_moments",
    "derive",
    "expectation",
    "finite_gamma_sum",
    "infinite_gamma_sum",
    "joint_table",
    "log_gamma_ratio",
    "loglog_fit",
    "marginal",
    "second_moment",
    "simulate",
    "swap_roles",
    "tail_coefficients",
    "taylor_constant",
]
