"""Random probe poses that keep finite differences away from kinks."""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

import torch

from ..geometry import DTYPE
from ..renderer import clip_margin, generate_rays
from ..template import PoseParams, apply_pose, project_anchors

if TYPE_CHECKING:
    from ..renderer import Camera, RenderSettings
    from ..template import Template

LOGGER = logging.getLogger(__name__)

KINK_MARGIN = 1e-3
"""Minimum distance of any sample occupancy/colour to the clip point and of any anchor coordinate to ±1."""

MIN_ANGLE = 0.05
"""Rotations are kept away from the norm kink of the regularizer at zero."""


def random_rotations(generator: torch.Generator, count: int, max_angle: float, min_angle: float = 0.0) -> torch.Tensor:
    """Axis-angle vectors with uniform random axes and angles uniform in ``[min_angle, max_angle]``."""
    axes = torch.randn((count, 3), generator=generator, dtype=DTYPE)
    axes = axes / axes.norm(dim=-1, keepdim=True)
    angles = min_angle + (max_angle - min_angle) * torch.rand(count, generator=generator, dtype=DTYPE)
    return axes * angles[:, None]


def sample_probe_pose(
    seed: int,
    template: Template,
    camera: Camera,
    settings: RenderSettings,
    *,
    max_attempts: int = 1000,
) -> PoseParams:
    """Draw a seeded random pose suitable for a finite-difference check.

    Rotations have ``‖r_k‖ <= π`` and scales lie in ``[0.5, 2]``. Poses with
    a sample within :data:`KINK_MARGIN` of the clip point, an anchor
    coordinate within :data:`KINK_MARGIN` of ``±1`` or an anchor behind the
    camera are rejected and redrawn.

    Raises:
        RuntimeError: No acceptable pose within ``max_attempts`` draws.

    """
    generator = torch.Generator().manual_seed(seed)
    rays = generate_rays(camera, settings)
    count = len(template)
    for attempt in range(1, max_attempts + 1):
        pose = PoseParams(
            rotations=random_rotations(generator, count, math.pi, MIN_ANGLE),
            scales=0.5 + 1.5 * torch.rand((count, 3), generator=generator, dtype=DTYPE),
            translation=0.2 * (2.0 * torch.rand(3, generator=generator, dtype=DTYPE) - 1.0),
        )
        posed = apply_pose(template, pose)
        anchors = project_anchors(posed, camera, aspect=settings.aspect)
        hinge_gap = float((anchors.points.abs() - 1.0).abs().min()) if anchors.points.numel() else math.inf
        if bool(anchors.behind.any()) or hinge_gap < KINK_MARGIN:
            continue
        if clip_margin(posed, rays) < KINK_MARGIN:
            continue
        LOGGER.debug("probe pose for seed %d accepted after %d attempt(s)", seed, attempt)
        return pose
    msg = f"no probe pose away from kinks after {max_attempts} attempts (seed {seed})"
    raise RuntimeError(msg)
