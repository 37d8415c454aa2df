"""Scheduling and control for a wireless networked control loop."""

from ._core import (
    ConfigError,
    Experiment,
    InfeasibleError,
    NonConvergenceError,
    error_covariance,
    load_config,
    parse_config,
    plant_covariance,
    simulate,
    solve,
    table3,
    tarq_gap,
    truncation,
)

__all__ = [
    "ConfigError",
    "Experiment",
    "InfeasibleError",
    "NonConvergenceError",
    "error_covariance",
    "load_config",
    "parse_config",
    "plant_covariance",
    "simulate",
    "solve",
    "table3",
    "tarq_gap",
    "truncation",
]
