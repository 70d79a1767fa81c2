"""Occupancy grid export for visualization."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from pathlib import Path

    from ..renderer import OccupancyGrid


def write_grid(path: Path, grid: OccupancyGrid) -> Path:
    """Save the grid values as ``.npy`` with a JSON sidecar holding the bounding box.

    Returns:
        Path of the sidecar file.

    """
    with path.open("wb") as stream:
        np.save(stream, grid.values.detach().numpy())
    sidecar = path.with_suffix(".json")
    sidecar.write_text(
        json.dumps(
            {"shape": list(grid.values.shape), "lower": list(grid.lower), "upper": list(grid.upper), "index": "xyz"},
            indent=2,
        )
    )
    return sidecar
