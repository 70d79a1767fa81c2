"""Emission-absorption ray casting of a posed template."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import torch

from ..exceptions import DimensionMismatch
from ..geometry import DTYPE, as_vec3, occupancy_at
from ._camera import Camera, Rays, RenderSettings, generate_rays

if TYPE_CHECKING:
    from ..template import TransformedTemplate

LOGGER = logging.getLogger(__name__)

COVERAGE_THRESHOLD = 0.5
"""Alpha above which a pixel counts as covered by the body."""

TILE_SAMPLES = 8192
"""Upper bound on pixels x samples shaded per tile.

Keeps every elementwise op below torch's intra-op parallel grain so a tile is
always computed the same way.

"""


@dataclass(frozen=True, eq=False)
class ImageBuffer:
    """Rendered radiance with per-pixel accumulated weight."""

    rgb: torch.Tensor
    """``(H, W, 3)`` colour in ``[0, 1]``."""

    alpha: torch.Tensor
    """``(H, W)`` sum of compositing weights in ``[0, 1]``."""

    def __post_init__(self) -> None:
        """Check that the colour and alpha planes agree.

        Raises:
            DimensionMismatch: Shapes are inconsistent.

        """
        if self.rgb.ndim != 3 or self.rgb.shape[-1] != 3:  # noqa: PLR2004
            raise DimensionMismatch("rgb", "(H, W, 3)", tuple(self.rgb.shape))
        if tuple(self.alpha.shape) != tuple(self.rgb.shape[:2]):
            raise DimensionMismatch("alpha", tuple(self.rgb.shape[:2]), tuple(self.alpha.shape))

    @property
    def height(self) -> int:
        """Rows."""
        return self.rgb.shape[0]

    @property
    def width(self) -> int:
        """Columns."""
        return self.rgb.shape[1]

    def detach(self) -> ImageBuffer:
        """Copy cut from the autograd graph."""
        return ImageBuffer(rgb=self.rgb.detach(), alpha=self.alpha.detach())

    def coverage(self) -> dict[str, float]:
        """Alpha statistics: covered fraction, mean, min and max."""
        alpha = self.alpha.detach()
        return {
            "coverage": float((alpha > COVERAGE_THRESHOLD).to(DTYPE).mean()),
            "mean_alpha": float(alpha.mean()),
            "min_alpha": float(alpha.min()),
            "max_alpha": float(alpha.max()),
        }

    @classmethod
    def from_rgb(cls, rgb: Any) -> ImageBuffer:
        """Wrap an ``(H, W, 3)`` colour array; alpha is set to one everywhere."""
        rgb = torch.as_tensor(rgb, dtype=DTYPE)
        return cls(rgb=rgb, alpha=torch.ones(rgb.shape[:2], dtype=DTYPE))

    @classmethod
    def filled(cls, settings: RenderSettings) -> ImageBuffer:
        """Background-only image of the given size with zero alpha."""
        colour = torch.tensor(settings.background_colour, dtype=DTYPE)
        return cls(
            rgb=colour.expand(settings.height, settings.width, 3).clone(),
            alpha=torch.zeros((settings.height, settings.width), dtype=DTYPE),
        )


def clip_unit(value: torch.Tensor) -> torch.Tensor:
    """``min(value, 1)`` whose gradient is 1 below the clip point and 0 at or above it."""
    return torch.where(value < 1.0, value, torch.ones_like(value))


def field_sums(parts: TransformedTemplate, x: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
    """Unclipped ``Σ_k f_k(x)`` and ``Σ_k f_k(x) ĉ_k``."""
    occupancy = torch.zeros(x.shape[:-1], dtype=DTYPE)
    colour = torch.zeros(x.shape, dtype=DTYPE)
    for part in parts.parts:
        f_k = occupancy_at(part, x)
        occupancy = occupancy + f_k
        colour = colour + f_k[..., None] * part.base_colour
    return occupancy, colour


def composite_fields(parts: TransformedTemplate, x: Any) -> tuple[torch.Tensor, torch.Tensor]:
    """Composite occupancy and colour of all parts at ``x``, each clipped to 1.

    Args:
        parts: Posed template.
        x: Point(s), shape ``(..., 3)``.

    Returns:
        Occupancy of shape ``(...)`` and colour of shape ``(..., 3)``.

    """
    occupancy, colour = field_sums(parts, as_vec3(x, name="x"))
    return clip_unit(occupancy), clip_unit(colour)


def transmission(occupancies: Any) -> torch.Tensor:
    """Exclusive cumulative product ``T_j = Π_{k<j} (1 - f_k)`` over the last axis."""
    occupancies = torch.as_tensor(occupancies, dtype=DTYPE)
    survival = torch.cumprod(1.0 - occupancies, dim=-1)
    return torch.cat([torch.ones_like(occupancies[..., :1]), survival[..., :-1]], dim=-1)


def _shade(
    parts: TransformedTemplate, points: torch.Tensor, background: torch.Tensor
) -> tuple[torch.Tensor, torch.Tensor]:
    occupancy, colour = composite_fields(parts, points)
    weights = occupancy * transmission(occupancy)
    rgb = (weights[..., None] * colour).sum(dim=1)
    alpha = weights.sum(dim=1)
    return rgb + (1.0 - alpha)[:, None] * background, alpha


def _row_tiles(settings: RenderSettings) -> list[slice]:
    rows = max(1, TILE_SAMPLES // (settings.width * settings.samples_per_ray))
    return [slice(start, min(start + rows, settings.height)) for start in range(0, settings.height, rows)]


def render(
    tt: TransformedTemplate, cam: Camera, settings: RenderSettings, *, threads: int = 1
) -> ImageBuffer:
    """Ray-cast a posed template.

    Each pixel gets ``rgb = Σ_j w_j c(p_j) + (1 - Σ_j w_j) background`` and
    ``alpha = Σ_j w_j`` with ``w_j = f(p_j) T(p_j)``. The image is shaded in
    fixed row tiles that ``threads`` workers pick up; tiles never depend on
    the worker count, so neither does the result.

    """
    rays = generate_rays(cam, settings)
    background = torch.tensor(settings.background_colour, dtype=DTYPE)
    tiles = _row_tiles(settings)
    workers = max(1, min(threads, len(tiles)))
    LOGGER.debug("rendering %dx%d in %d tile(s) on %d worker(s)", settings.width, settings.height, len(tiles), workers)

    def shade(rows: slice) -> tuple[torch.Tensor, torch.Tensor]:
        return _shade(tt, rays.sample_points(rows), background)

    if workers == 1:
        results = [shade(rows) for rows in tiles]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(shade, tiles))
    rgb = torch.cat([block_rgb for block_rgb, _ in results])
    alpha = torch.cat([block_alpha for _, block_alpha in results])
    return ImageBuffer(
        rgb=rgb.reshape(settings.height, settings.width, 3),
        alpha=alpha.reshape(settings.height, settings.width),
    )


def clip_margin(tt: TransformedTemplate, rays: Rays) -> float:
    """Smallest distance of composite occupancy or colour to the clip point 1.

    Taken over every sample the renderer evaluates. Finite differences are
    only trustworthy when no sample sits on the clip kink.

    """
    with torch.no_grad():
        occupancy, colour = field_sums(tt, rays.sample_points())
    return min(float((occupancy - 1.0).abs().min()), float((colour - 1.0).abs().min()))
