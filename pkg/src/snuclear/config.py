"""Tolerances and heuristic thresholds used across the package."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    # core linear algebra
    jacobi_tol: float = 1e-13
    jacobi_max_sweeps: int = 60
    sign_enum_max_cols: int = 14
    # certificates
    reconstruction_tol: float = 1e-8
    gamma_rtol: float = 1e-9
    trace_rtol: float = 1e-9
    rank_rtol: float = 1e-12
    # growth verdicts
    bounded_slope: float = 0.02
    power_slope: float = 0.2
    log_ratio: float = 5.0
    profile_octaves: int = 6
    # carleman symbol
    beta: float = 1.5
    oversample: int = 4
    # pietsch estimator
    pi2_iterations: int = 200
    pi2_max_power: float = 1e6
    pi2_bisect_rtol: float = 1e-6
    # trace checks
    k_max: int = 5


DEFAULT = Config()
