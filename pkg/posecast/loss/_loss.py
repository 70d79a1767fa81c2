"""Reconstruction, boundary and rotation terms of the pose objective."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import torch

from ..exceptions import DimensionMismatch
from ..geometry import DTYPE

if TYPE_CHECKING:
    from ..renderer import ImageBuffer
    from ..template import PoseParams

ALPHA_DECAY_ITERATIONS = 500
"""Iteration at which the rotation regularizer weight reaches zero."""


@dataclass(frozen=True, eq=False)
class LossBreakdown:
    """Every term of the objective plus their weighted sum.

    ``total`` is always ``recon + boundary + alpha * rot_reg``.

    """

    recon: torch.Tensor
    boundary: torch.Tensor
    rot_reg: torch.Tensor
    alpha: float
    total: torch.Tensor

    def to_record(self) -> dict[str, float]:
        """Plain floats for logs and reports."""
        return {
            "recon": float(self.recon.detach()),
            "boundary": float(self.boundary.detach()),
            "rot_reg": float(self.rot_reg.detach()),
            "alpha": self.alpha,
            "total": float(self.total.detach()),
        }


def recon_loss(rendered: ImageBuffer, target: ImageBuffer) -> torch.Tensor:
    """Mean over pixels of the squared RGB difference summed over channels.

    Alpha is ignored.

    Raises:
        DimensionMismatch: The images differ in size.

    """
    if rendered.rgb.shape != target.rgb.shape:
        raise DimensionMismatch("image", tuple(target.rgb.shape), tuple(rendered.rgb.shape))
    diff = rendered.rgb - target.rgb
    return (diff * diff).sum(dim=-1).mean()


def boundary_loss(anchors_2d: Any) -> torch.Tensor:
    """Hinge ``Σ_i |a_i|`` over every coordinate with ``|a_i| > 1``.

    Args:
        anchors_2d: ``(M, 2)`` normalized image coordinates of the anchors in
            front of the camera.

    """
    anchors = torch.as_tensor(anchors_2d, dtype=DTYPE).reshape(-1, 2)
    magnitude = anchors.abs()
    return torch.where(magnitude > 1.0, magnitude, torch.zeros_like(magnitude)).sum()


def safe_norm(vectors: torch.Tensor) -> torch.Tensor:
    """Euclidean norm over the last axis with a zero (sub)gradient at the origin."""
    squared = (vectors * vectors).sum(dim=-1)
    nonzero = squared > 0
    return torch.where(nonzero, torch.sqrt(torch.where(nonzero, squared, torch.ones_like(squared))), squared)


def rotation_reg(pose: PoseParams) -> torch.Tensor:
    """Sum of the rotation-vector norms ``Σ_k ‖r_k‖₂``."""
    return safe_norm(pose.rotations).sum()


def alpha_schedule(iteration: int) -> float:
    """Weight of the rotation regularizer, decaying linearly from 1 to 0 over 500 iterations.

    Raises:
        ValueError: ``iteration`` is negative.

    """
    if iteration < 0:
        msg = f"iteration must be >= 0, got {iteration}"
        raise ValueError(msg)
    return max(0.0, 1.0 - iteration / ALPHA_DECAY_ITERATIONS)


def total_loss(
    rendered: ImageBuffer,
    target: ImageBuffer,
    anchors_2d: Any,
    pose: PoseParams,
    iteration: int,
) -> LossBreakdown:
    """Evaluate every term and combine them as ``recon + boundary + α rot_reg``."""
    recon = recon_loss(rendered, target)
    boundary = boundary_loss(anchors_2d)
    rot_reg = rotation_reg(pose)
    alpha = alpha_schedule(iteration)
    return LossBreakdown(
        recon=recon,
        boundary=boundary,
        rot_reg=rot_reg,
        alpha=alpha,
        total=recon + boundary + alpha * rot_reg,
    )
