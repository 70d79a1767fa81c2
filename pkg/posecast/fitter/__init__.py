"""Gradient-based pose recovery and the synthetic recovery experiment."""

from ._adam import AdamState, adam_step
from ._experiment import (
    ExperimentConfig,
    ExperimentReport,
    ExperimentSummary,
    run_experiments,
    synth_experiment,
)
from ._fit import (
    CONVERGENCE_THRESHOLD,
    CSV_COLUMNS,
    FitLogEntry,
    FitOptions,
    FitResult,
    FitResultDocument,
    fit_pose,
)

__all__ = [
    "CONVERGENCE_THRESHOLD",
    "CSV_COLUMNS",
    "AdamState",
    "ExperimentConfig",
    "ExperimentReport",
    "ExperimentSummary",
    "FitLogEntry",
    "FitOptions",
    "FitResult",
    "FitResultDocument",
    "adam_step",
    "fit_pose",
    "run_experiments",
    "synth_experiment",
]
