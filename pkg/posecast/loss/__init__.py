"""The pose objective: reconstruction, anchor boundary hinge and decaying rotation regularizer."""

from ._loss import (
    ALPHA_DECAY_ITERATIONS,
    LossBreakdown,
    alpha_schedule,
    boundary_loss,
    recon_loss,
    rotation_reg,
    safe_norm,
    total_loss,
)

__all__ = [
    "ALPHA_DECAY_ITERATIONS",
    "LossBreakdown",
    "alpha_schedule",
    "boundary_loss",
    "recon_loss",
    "rotation_reg",
    "safe_norm",
    "total_loss",
]
