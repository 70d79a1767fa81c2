"""Perspective ray casting with emission-absorption compositing."""

from ._camera import Camera, Rays, RenderSettings, generate_rays
from ._grid import OccupancyGrid, occupancy_grid
from ._reference import render_reference
from ._render import (
    ImageBuffer,
    clip_margin,
    clip_unit,
    composite_fields,
    field_sums,
    render,
    transmission,
)

__all__ = [
    "Camera",
    "ImageBuffer",
    "OccupancyGrid",
    "Rays",
    "RenderSettings",
    "clip_margin",
    "clip_unit",
    "composite_fields",
    "field_sums",
    "generate_rays",
    "occupancy_grid",
    "render",
    "render_reference",
    "transmission",
]
