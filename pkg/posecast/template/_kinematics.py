"""Pose parameters and the kinematic chain that applies them to a template."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import torch

from ..exceptions import DimensionMismatch
from ..geometry import DTYPE, GaussianPart, Vec3, as_vec3, compose_affine, transform_gaussian

if TYPE_CHECKING:
    from ..renderer import Camera
    from ._template import Template

LOGGER = logging.getLogger(__name__)

SCALE_MIN = 0.2
"""Lower bound of the per-axis scale after clamping."""

SCALE_MAX = 5.0
"""Upper bound of the per-axis scale after clamping."""


def _as_block(value: Any, name: str) -> torch.Tensor:
    tensor = as_vec3(value, name=name)
    if tensor.ndim != 2:  # noqa: PLR2004
        raise DimensionMismatch(name, "(K, 3)", tuple(tensor.shape))
    return tensor


@dataclass(frozen=True, eq=False)
class PoseParams:
    """Per-part axis-angle rotations and scales plus one global translation."""

    rotations: torch.Tensor
    """Axis-angle vector of every part, shape ``(K, 3)``."""

    scales: torch.Tensor
    """Per-axis scale of every part, shape ``(K, 3)``."""

    translation: Vec3 = field(default_factory=lambda: torch.zeros(3, dtype=DTYPE))
    """Global translation added to the assembled body, shape ``(3,)``."""

    def __post_init__(self) -> None:
        """Coerce to tensors and check that the blocks agree.

        Raises:
            DimensionMismatch: The rotation and scale blocks differ in length.

        """
        object.__setattr__(self, "rotations", _as_block(self.rotations, "rotations"))
        object.__setattr__(self, "scales", _as_block(self.scales, "scales"))
        object.__setattr__(self, "translation", as_vec3(self.translation, name="translation"))
        if self.rotations.shape != self.scales.shape:
            raise DimensionMismatch("scales", tuple(self.rotations.shape), tuple(self.scales.shape))
        if self.translation.shape != (3,):
            raise DimensionMismatch("translation", (3,), tuple(self.translation.shape))

    @property
    def num_parts(self) -> int:
        """Number of parts ``K`` the pose is defined for."""
        return self.rotations.shape[0]

    def clamped(self) -> PoseParams:
        """Copy with scales clamped to ``[SCALE_MIN, SCALE_MAX]``.

        The gradient through the clamp is zero outside the interval.

        """
        return PoseParams(
            rotations=self.rotations,
            scales=torch.clamp(self.scales, SCALE_MIN, SCALE_MAX),
            translation=self.translation,
        )

    def detach(self) -> PoseParams:
        """Copy cut from the autograd graph."""
        return PoseParams(
            rotations=self.rotations.detach().clone(),
            scales=self.scales.detach().clone(),
            translation=self.translation.detach().clone(),
        )

    def translated(self, delta: Any) -> PoseParams:
        """Copy with ``delta`` added to the global translation."""
        return PoseParams(self.rotations, self.scales, self.translation + as_vec3(delta, name="delta"))

    @classmethod
    def identity(cls, num_parts: int) -> PoseParams:
        """Rest pose: zero rotation, unit scale, zero translation."""
        return cls(
            rotations=torch.zeros((num_parts, 3), dtype=DTYPE),
            scales=torch.ones((num_parts, 3), dtype=DTYPE),
            translation=torch.zeros(3, dtype=DTYPE),
        )


@dataclass(frozen=True, eq=False)
class TransformedTemplate:
    """Posed template ready for rendering.

    ``anchor_parent_side[i]`` and ``anchor_child_side[i]`` are the two world
    positions of the joint between part ``anchor_parts[i]`` and its parent.

    """

    parts: tuple[GaussianPart, ...]
    """Transformed Gaussians in template order."""

    names: tuple[str, ...] = ()
    """Part names in template order."""

    anchor_parts: tuple[int, ...] = ()
    """Index of the (non-root) child part each anchor row belongs to."""

    anchor_parent_side: torch.Tensor = field(default_factory=lambda: torch.zeros((0, 3), dtype=DTYPE))
    """Parent's overlap point after the parent's transform, shape ``(K-1, 3)``."""

    anchor_child_side: torch.Tensor = field(default_factory=lambda: torch.zeros((0, 3), dtype=DTYPE))
    """Child's overlap point after the child's transform and reconnection, shape ``(K-1, 3)``."""

    @property
    def anchors(self) -> torch.Tensor:
        """World anchors used for projection (child side)."""
        return self.anchor_child_side

    def max_anchor_gap(self) -> float:
        """Largest distance between the two sides of any joint."""
        if not self.anchor_parts:
            return 0.0
        return float((self.anchor_parent_side - self.anchor_child_side).detach().norm(dim=-1).max())


@dataclass(frozen=True, eq=False)
class _PartMap:
    """World map ``x ↦ H (x - pivot) + pivot + shift`` of one part."""

    h: torch.Tensor
    pivot: torch.Tensor
    shift: torch.Tensor

    def __call__(self, x: torch.Tensor) -> torch.Tensor:
        return self.h @ (x - self.pivot) + self.pivot + self.shift


def apply_pose(tmpl: Template, pose: PoseParams) -> TransformedTemplate:
    """Transform every part and reconnect it to its parent.

    Parts are processed in template (topological) order. Each part is scaled
    and rotated by ``H_k = rodrigues(r_k) diag(s_k)`` about its own rest
    anchor (the root about its mean), then translated so its anchor lands on
    the parent's already transformed anchor. The global translation is added
    to the assembled body last.

    Raises:
        DimensionMismatch: The pose is not defined for ``len(tmpl)`` parts.

    """
    if pose.num_parts != len(tmpl):
        raise DimensionMismatch("pose parts", len(tmpl), pose.num_parts)
    pose = pose.clamped()
    maps: list[_PartMap] = []
    parts: list[GaussianPart] = []
    anchor_parts: list[int] = []
    parent_side: list[torch.Tensor] = []
    child_side: list[torch.Tensor] = []
    for index, spec in enumerate(tmpl.parts):
        h = compose_affine(pose.rotations[index], pose.scales[index])
        if spec.parent is None or spec.anchor_parent is None or spec.anchor_self is None:
            part_map = _PartMap(h=h, pivot=spec.gaussian.mean, shift=torch.zeros(3, dtype=DTYPE))
        else:
            joint = maps[spec.parent](spec.anchor_parent)
            part_map = _PartMap(h=h, pivot=spec.anchor_self, shift=joint - spec.anchor_self)
            anchor_parts.append(index)
            parent_side.append(joint + pose.translation)
            child_side.append(part_map(spec.anchor_self) + pose.translation)
        maps.append(part_map)
        offset = part_map.pivot - h @ part_map.pivot + part_map.shift + pose.translation
        parts.append(transform_gaussian(spec.gaussian, h, offset))
    return TransformedTemplate(
        parts=tuple(parts),
        names=tmpl.names,
        anchor_parts=tuple(anchor_parts),
        anchor_parent_side=torch.stack(parent_side) if parent_side else torch.zeros((0, 3), dtype=DTYPE),
        anchor_child_side=torch.stack(child_side) if child_side else torch.zeros((0, 3), dtype=DTYPE),
    )


@dataclass(frozen=True, eq=False)
class ProjectedAnchors:
    """Anchors projected to normalized image coordinates."""

    points: torch.Tensor
    """``(M, 2)`` positions; the image spans ``(-1, 1)`` on both axes."""

    behind: torch.Tensor
    """``(M,)`` boolean mask of anchors at or behind the near plane."""

    @property
    def visible(self) -> torch.Tensor:
        """Points in front of the camera; the ones the boundary loss sees."""
        return self.points[~self.behind]


def project_anchors(tt: TransformedTemplate, cam: Camera, *, aspect: float = 1.0) -> ProjectedAnchors:
    """Perspective-project every world anchor of a posed template.

    ``aspect`` is the image width over height, so the image spans ``(-1, 1)``
    on both axes whatever its shape. Anchors whose camera-space depth is
    ``<= cam.near`` are flagged in :attr:`ProjectedAnchors.behind` rather
    than raising.

    """
    points, depth = cam.project(tt.anchors, aspect=aspect)
    behind = depth.detach() <= cam.near
    if bool(behind.any()):
        LOGGER.debug("%d anchor(s) behind the near plane", int(behind.sum()))
    return ProjectedAnchors(points=points, behind=behind)
