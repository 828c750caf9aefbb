"""Entanglement degradation seen by a uniformly accelerated detector."""

from ._core import (
    ConfigError,
    DomainError,
    GridSpec,
    PhysicalParams,
    beta_estimate,
    bose_einstein_occupation,
    build_covariance,
    conformal_length,
    csv_header,
    default_grid,
    evaluate_point,
    ideal_covariance,
    log_negativity,
    physicality_check,
    refined,
    run_checks,
    sweep,
    with_aL,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "GridSpec",
    "PhysicalParams",
    "beta_estimate",
    "bose_einstein_occupation",
    "build_covariance",
    "conformal_length",
    "csv_header",
    "default_grid",
    "evaluate_point",
    "ideal_covariance",
    "log_negativity",
    "physicality_check",
    "refined",
    "run_checks",
    "sweep",
    "with_aL",
]
