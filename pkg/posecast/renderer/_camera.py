"""Pinhole camera, render settings and ray generation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import torch
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..geometry import DTYPE

Triple = tuple[float, float, float]

PARALLEL_TOLERANCE = 1e-9


class Camera(BaseModel):
    """Perspective camera looking from ``position`` towards ``look_at``.

    The JSON form uses the same field names.

    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    position: Triple = (0.0, 0.0, 5.0)
    """Ray origin ``r_0``."""

    look_at: Triple = (0.0, 0.0, 0.0)
    """Point on the optical axis."""

    up: Triple = (0.0, 1.0, 0.0)
    """Approximate up direction; must not be parallel to the view direction."""

    fov_deg: float = Field(default=45.0, gt=0.0, lt=180.0)
    """Vertical field of view in degrees."""

    near: float = Field(default=4.0, gt=0.0)
    """Distance along each ray of the first sample."""

    far: float = 6.0
    """Distance along each ray of the last sample."""

    @model_validator(mode="after")
    def _check_geometry(self) -> Camera:
        if self.far <= self.near:
            msg = f"far ({self.far}) must be greater than near ({self.near})"
            raise ValueError(msg)
        view = torch.tensor(self.look_at, dtype=DTYPE) - torch.tensor(self.position, dtype=DTYPE)
        if float(view.norm()) == 0.0:
            raise ValueError("look_at must differ from position")
        up = torch.tensor(self.up, dtype=DTYPE)
        if float(torch.linalg.cross(view / view.norm(), up).norm()) <= PARALLEL_TOLERANCE * float(up.norm()):
            raise ValueError("up must not be parallel to the view direction")
        return self

    @property
    def vertical_fov(self) -> float:
        """Vertical field of view in radians."""
        return math.radians(self.fov_deg)

    @property
    def origin(self) -> torch.Tensor:
        """Camera position as a tensor."""
        return torch.tensor(self.position, dtype=DTYPE)

    def basis(self) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
        """Orthonormal ``(forward, right, up)`` frame of the camera."""
        forward = torch.tensor(self.look_at, dtype=DTYPE) - self.origin
        forward = forward / forward.norm()
        right = torch.linalg.cross(forward, torch.tensor(self.up, dtype=DTYPE))
        right = right / right.norm()
        return forward, right, torch.linalg.cross(right, forward)

    def project(self, points: torch.Tensor, *, aspect: float = 1.0) -> tuple[torch.Tensor, torch.Tensor]:
        """Project world points to normalized image coordinates.

        The visible image spans ``(-1, 1)`` on both axes; ``+x`` is right and
        ``+y`` is up.

        Args:
            points: World points, shape ``(M, 3)``.
            aspect: Image width divided by height.

        Returns:
            ``(M, 2)`` normalized coordinates and ``(M,)`` camera-space depths.

        """
        forward, right, up = self.basis()
        rel = points - self.origin
        depth = rel @ forward
        half_height = math.tan(self.vertical_fov / 2.0)
        x = (rel @ right) / (depth * half_height * aspect)
        y = (rel @ up) / (depth * half_height)
        return torch.stack([x, y], dim=-1), depth

    @classmethod
    def default(cls) -> Camera:
        """Camera of the frozen default scene."""
        return cls()


class RenderSettings(BaseModel):
    """Image size, samples per ray and background."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    width: int = Field(default=64, ge=1)
    height: int = Field(default=64, ge=1)

    samples_per_ray: int = Field(default=32, ge=2)
    """Number of samples ``J`` along each ray."""

    background_colour: Triple = (0.0, 0.0, 0.0)

    @model_validator(mode="after")
    def _check_background(self) -> RenderSettings:
        if any(not 0.0 <= value <= 1.0 for value in self.background_colour):
            msg = f"background_colour must lie in [0, 1], got {self.background_colour}"
            raise ValueError(msg)
        return self

    @property
    def aspect(self) -> float:
        """Width divided by height."""
        return self.width / self.height


@dataclass(frozen=True, eq=False)
class Rays:
    """One ray per pixel, row-major with row 0 at the top of the image."""

    origins: torch.Tensor
    """``(H, W, 3)`` ray origins."""

    directions: torch.Tensor
    """``(H, W, 3)`` unit directions."""

    t_near: float
    """Distance of the first sample along every ray."""

    t_far: float
    """Distance of the last sample along every ray."""

    samples: int
    """Number of samples ``J``."""

    @property
    def step(self) -> float:
        """Sample spacing ``δs = (far - near) / (J - 1)``."""
        return (self.t_far - self.t_near) / (self.samples - 1)

    @property
    def distances(self) -> torch.Tensor:
        """``(J,)`` sample distances ``t_near + j δs``."""
        return self.t_near + torch.arange(self.samples, dtype=DTYPE) * self.step

    def sample_points(self, rows: slice = slice(None)) -> torch.Tensor:
        """Sample positions ``o + (t_near + j δs) d`` of the given image rows, shape ``(N, J, 3)``."""
        origins = self.origins[rows].reshape(-1, 3)
        directions = self.directions[rows].reshape(-1, 3)
        return origins[:, None, :] + self.distances[None, :, None] * directions[:, None, :]


def generate_rays(cam: Camera, settings: RenderSettings) -> Rays:
    """Cast one ray through the centre of every pixel."""
    forward, right, up = cam.basis()
    half_height = math.tan(cam.vertical_fov / 2.0)
    half_width = half_height * settings.aspect
    cols = (torch.arange(settings.width, dtype=DTYPE) + 0.5) / settings.width * 2.0 - 1.0
    rows = 1.0 - (torch.arange(settings.height, dtype=DTYPE) + 0.5) / settings.height * 2.0
    ndc_y, ndc_x = torch.meshgrid(rows, cols, indexing="ij")
    directions = (
        forward + (ndc_x * half_width)[..., None] * right + (ndc_y * half_height)[..., None] * up
    )
    directions = directions / directions.norm(dim=-1, keepdim=True)
    return Rays(
        origins=cam.origin.expand(directions.shape),
        directions=directions,
        t_near=cam.near,
        t_far=cam.far,
        samples=settings.samples_per_ray,
    )
