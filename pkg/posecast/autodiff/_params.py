"""Flat parameter vector layout ``[r_1..r_K | s_1..s_K | t]``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import torch

from ..exceptions import DimensionMismatch
from ..geometry import DTYPE
from ..template import PoseParams

ParamVector = torch.Tensor
"""1-D tensor of ``6K + 3`` float64 values."""


@dataclass(frozen=True)
class ParamLayout:
    """Where each block of a :data:`ParamVector` lives."""

    num_parts: int

    @property
    def size(self) -> int:
        """Total length ``6K + 3``."""
        return 6 * self.num_parts + 3

    @property
    def rotations(self) -> slice:
        """Axis-angle block."""
        return slice(0, 3 * self.num_parts)

    @property
    def scales(self) -> slice:
        """Per-axis scale block."""
        return slice(3 * self.num_parts, 6 * self.num_parts)

    @property
    def translation(self) -> slice:
        """Global translation block."""
        return slice(6 * self.num_parts, 6 * self.num_parts + 3)

    @classmethod
    def for_size(cls, size: int) -> ParamLayout:
        """Layout of a vector of the given length.

        Raises:
            DimensionMismatch: ``size`` is not of the form ``6K + 3`` with ``K >= 1``.

        """
        if size < 9 or (size - 3) % 6:  # noqa: PLR2004
            raise DimensionMismatch("parameter vector", "6K + 3", size)
        return cls(num_parts=(size - 3) // 6)


def pose_to_vector(pose: PoseParams) -> ParamVector:
    """Flatten a pose in the frozen ``[rotations | scales | translation]`` order."""
    return torch.cat([pose.rotations.reshape(-1), pose.scales.reshape(-1), pose.translation.reshape(-1)])


def vector_to_pose(vector: Any) -> PoseParams:
    """Inverse of :func:`pose_to_vector`; autograd history is kept.

    Raises:
        DimensionMismatch: The length is not ``6K + 3``.

    """
    vector = torch.as_tensor(vector, dtype=DTYPE)
    if vector.ndim != 1:
        raise DimensionMismatch("parameter vector", "1-D", tuple(vector.shape))
    layout = ParamLayout.for_size(vector.shape[0])
    return PoseParams(
        rotations=vector[layout.rotations].reshape(-1, 3),
        scales=vector[layout.scales].reshape(-1, 3),
        translation=vector[layout.translation],
    )
