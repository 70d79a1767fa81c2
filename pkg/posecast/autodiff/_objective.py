"""The full analysis-by-synthesis objective as a function of a parameter vector."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import torch

from ..loss import LossBreakdown, total_loss
from ..renderer import render
from ..template import apply_pose, project_anchors
from ._params import vector_to_pose

if TYPE_CHECKING:
    from ..renderer import Camera, ImageBuffer, RenderSettings
    from ..template import PoseParams, ProjectedAnchors, Template


@dataclass(frozen=True, eq=False)
class Evaluation:
    """Everything produced by one pass through the pipeline."""

    pose: PoseParams
    image: ImageBuffer
    anchors: ProjectedAnchors
    breakdown: LossBreakdown
    objective: torch.Tensor
    """Sum of the enabled terms; equals ``breakdown.total`` when all are enabled."""


@dataclass(frozen=True, eq=False)
class RenderObjective:
    """``p ↦ total_loss(render(apply_pose(template, p)), target, ...)``.

    Callable with a parameter vector, which makes it usable with
    :func:`~posecast.autodiff.gradient` and
    :func:`~posecast.autodiff.finite_diff_check`. The ``use_*`` switches
    drop terms from the optimized objective (the breakdown still reports
    every term).

    """

    template: Template
    camera: Camera
    settings: RenderSettings
    target: ImageBuffer
    iteration: int = 0
    use_recon: bool = True
    use_boundary: bool = True
    use_rotation_reg: bool = True
    threads: int = 1

    def evaluate(self, vector: torch.Tensor, iteration: int | None = None) -> Evaluation:
        """Run the pipeline at ``vector``."""
        iteration = self.iteration if iteration is None else iteration
        pose = vector_to_pose(vector)
        posed = apply_pose(self.template, pose)
        image = render(posed, self.camera, self.settings, threads=self.threads)
        anchors = project_anchors(posed, self.camera, aspect=self.settings.aspect)
        breakdown = total_loss(image, self.target, anchors.visible, pose, iteration)
        if self.use_recon and self.use_boundary and self.use_rotation_reg:
            objective = breakdown.total
        else:
            objective = torch.zeros((), dtype=breakdown.total.dtype)
            if self.use_recon:
                objective = objective + breakdown.recon
            if self.use_boundary:
                objective = objective + breakdown.boundary
            if self.use_rotation_reg:
                objective = objective + breakdown.alpha * breakdown.rot_reg
        return Evaluation(pose=pose, image=image, anchors=anchors, breakdown=breakdown, objective=objective)

    def __call__(self, vector: torch.Tensor) -> torch.Tensor:
        """Objective value at ``vector`` for the configured iteration."""
        return self.evaluate(vector).objective
