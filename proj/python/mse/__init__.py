"""Scheduling with machine-dependent interference costs."""

from ._mse import (
    Instance,
    MseError,
    algorithms,
    bounds,
    exact,
    max_cost,
    partition_instance,
    preset,
    ptas,
    run,
    run_experiment,
    synthetic_instance,
)

__all__ = [
    "Instance",
    "MseError",
    "algorithms",
    "bounds",
    "exact",
    "max_cost",
    "partition_instance",
    "preset",
    "ptas",
    "run",
    "run_experiment",
    "synthetic_instance",
]
