"""Dense occupancy rasterization for visualization."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import torch

from ..geometry import DTYPE
from ._render import composite_fields

if TYPE_CHECKING:
    from ..template import TransformedTemplate

GRID_MARGIN = 3.0
"""Half extent of the grid around each part, in standard deviations."""


@dataclass(frozen=True, eq=False)
class OccupancyGrid:
    """Composite occupancy sampled on a regular axis-aligned grid."""

    values: torch.Tensor
    """``(R, R, R)`` occupancy indexed ``[x, y, z]``."""

    lower: tuple[float, float, float]
    upper: tuple[float, float, float]


def occupancy_grid(tt: TransformedTemplate, resolution: int = 32) -> OccupancyGrid:
    """Sample the clipped composite occupancy on a ``resolution³`` grid.

    The box covers every part out to :data:`GRID_MARGIN` standard deviations
    along each world axis.

    Raises:
        ValueError: ``resolution < 2`` or the template has no parts.

    """
    if resolution < 2:  # noqa: PLR2004
        msg = f"resolution must be at least 2, got {resolution}"
        raise ValueError(msg)
    if not tt.parts:
        raise ValueError("cannot rasterize a template without parts")
    with torch.no_grad():
        means = torch.stack([part.mean for part in tt.parts])
        spreads = torch.stack([part.covariance.diagonal().sqrt() for part in tt.parts]) * GRID_MARGIN
        lower = (means - spreads).min(dim=0).values
        upper = (means + spreads).max(dim=0).values
        axes = [torch.linspace(float(lower[i]), float(upper[i]), resolution, dtype=DTYPE) for i in range(3)]
        points = torch.stack(torch.meshgrid(*axes, indexing="ij"), dim=-1)
        values, _ = composite_fields(tt, points)
    return OccupancyGrid(
        values=values,
        lower=(float(lower[0]), float(lower[1]), float(lower[2])),
        upper=(float(upper[0]), float(upper[1]), float(upper[2])),
    )
