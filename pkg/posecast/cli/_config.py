"""Run configuration assembled from command-line flags."""

from __future__ import annotations

import argparse
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..autodiff import DEFAULT_EPS, EPS_MAX, EPS_MIN
from ..fitter import CONVERGENCE_THRESHOLD
from ..renderer import Camera, RenderSettings
from ..template import PoseDocument, PoseParams, Template, TemplateDocument, default_human_template

Command = Literal["render", "fit", "gradcheck", "template-validate", "template-export-grid"]

Triple = tuple[float, float, float]


def parse_seeds(value: str) -> tuple[int, ...]:
    """Parse ``"0-9"``, ``"1,4,7"`` or a mix of both into seeds."""
    seeds: list[int] = []
    for chunk in value.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "-" in chunk[1:]:
            start, _, stop = chunk.partition("-")
            seeds.extend(range(int(start), int(stop) + 1))
        else:
            seeds.append(int(chunk))
    return tuple(seeds)


class RunConfig(BaseModel):
    """Validated command line of one ``posecast`` invocation."""

    model_config = ConfigDict(extra="ignore", frozen=True)

    command: Command

    template: Path | None = None
    pose: Path | None = None
    camera: Path | None = None
    target: Path | None = None
    """Input files; :data:`None` selects the frozen default scene."""

    out: Path | None = None
    log: Path | None = None
    png: Path | None = None
    side_by_side: Path | None = None

    width: int | None = Field(default=None, ge=1)
    height: int | None = Field(default=None, ge=1)
    samples: int | None = Field(default=None, ge=2)
    background: Triple = (0.0, 0.0, 0.0)
    seed: int = 0
    threads: int = Field(default=1, ge=1)

    eps: float = Field(default=DEFAULT_EPS, ge=EPS_MIN, le=EPS_MAX)
    iteration: int = Field(default=0, ge=0)
    sabotage: bool = False
    """Corrupt the analytic gradient so the checker must fail."""

    reference: bool = False
    """Render with the scalar reference implementation."""

    iters: int = Field(default=800, ge=0)
    lr: float = Field(default=0.01, gt=0.0)
    stop_below: float | None = Field(default=CONVERGENCE_THRESHOLD, ge=0.0)
    experiment: bool = False
    seeds: tuple[int, ...] = tuple(range(10))

    resolution: int = Field(default=32, ge=2)

    @field_validator("template", "pose", "camera", "target")
    @classmethod
    def _must_exist(cls, value: Path | None) -> Path | None:
        if value is not None and not value.is_file():
            msg = f"{value}: no such file"
            raise ValueError(msg)
        return value

    @classmethod
    def from_namespace(cls, namespace: argparse.Namespace) -> RunConfig:
        """Build from parsed arguments, leaving unset flags at their defaults."""
        values: dict[str, Any] = {key: value for key, value in vars(namespace).items() if value is not None}
        values.pop("handler", None)
        return cls.model_validate(values)

    def load_template(self) -> Template:
        """Template from ``--template`` or the default humanoid."""
        if self.template is None:
            return default_human_template()
        return TemplateDocument.model_validate_json(self.template.read_text()).to_template()

    def load_pose(self, num_parts: int) -> PoseParams:
        """Pose from ``--pose`` or the identity pose."""
        if self.pose is None:
            return PoseParams.identity(num_parts)
        return PoseDocument.model_validate_json(self.pose.read_text()).to_pose(num_parts)

    def load_camera(self) -> Camera:
        """Camera from ``--camera`` or the default camera."""
        if self.camera is None:
            return Camera.default()
        return Camera.model_validate_json(self.camera.read_text())

    def render_settings(self, *, size: int = 64, samples: int = 32) -> RenderSettings:
        """Render settings from the flags, falling back to the given defaults."""
        return RenderSettings(
            width=self.width or size,
            height=self.height or size,
            samples_per_ray=self.samples or samples,
            background_colour=self.background,
        )
