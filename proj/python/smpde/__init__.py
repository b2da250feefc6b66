# SPDX-License-Identifier: Apache-2.0
"""Stochastic heat and Burgers equations driven by stochastic measures."""

from ._smpde import (
    AssumptionError,
    CoefficientSet,
    ConfigError,
    ConvergenceError,
    DomainError,
    Error,
    GridSpec,
    MeasureSample,
    SigmaSpec,
    gronwall_series,
    heat_kernel,
    heat_kernel_dx,
    load_measure,
    load_space_time,
    measure_from_increments,
    project_pi_n,
    regularity_report,
    run,
    sample_measure,
    seed_split,
    serialize_config,
    sigma_bar,
    solve,
    theta_field,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionError",
    "CoefficientSet",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "Error",
    "GridSpec",
    "MeasureSample",
    "SigmaSpec",
    "gronwall_series",
    "heat_kernel",
    "heat_kernel_dx",
    "load_measure",
    "load_space_time",
    "measure_from_increments",
    "project_pi_n",
    "regularity_report",
    "run",
    "sample_measure",
    "seed_split",
    "serialize_config",
    "sigma_bar",
    "solve",
    "theta_field",
]
