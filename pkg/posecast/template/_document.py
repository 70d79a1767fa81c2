"""JSON documents for templates and poses."""

from __future__ import annotations

from typing import Literal

import torch
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..exceptions import DimensionMismatch
from ..geometry import DTYPE
from ._kinematics import PoseParams
from ._template import Template

Triple = tuple[float, float, float]
"""JSON array of three numbers."""

SCHEMA_VERSION = 1


class PartDocument(BaseModel):
    """One entry of ``TemplateDocument.parts``."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = Field(min_length=1)
    """Unique part name."""

    parent: str | None
    """Name of the parent part, ``null`` for the root."""

    mean: Triple
    covariance: tuple[Triple, Triple, Triple]
    colour: Triple

    anchor: Triple | None = None
    """Shared rest-pose overlap point with the parent, ``null`` for the root."""

    @model_validator(mode="after")
    def _anchor_iff_parent(self) -> PartDocument:
        if (self.parent is None) != (self.anchor is None):
            msg = f"part {self.name!r}: anchor must be given exactly when parent is"
            raise ValueError(msg)
        return self


class TemplateDocument(BaseModel):
    """Canonical serialization of a :class:`~posecast.template.Template`."""

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    schema_version: Literal[1] = Field(default=SCHEMA_VERSION, alias="schema")
    parts: tuple[PartDocument, ...] = Field(min_length=1)

    def to_template(self) -> Template:
        """Build the in-memory template.

        Raises:
            InvalidTemplate: The parts do not form a valid rooted tree.

        """
        return Template.from_parts([part.model_dump() for part in self.parts])

    @classmethod
    def from_template(cls, tmpl: Template) -> TemplateDocument:
        """Serialize an in-memory template."""
        names = tmpl.names
        return cls(
            parts=tuple(
                PartDocument(
                    name=part.name,
                    parent=None if part.parent is None else names[part.parent],
                    mean=tuple(part.gaussian.mean.tolist()),
                    covariance=tuple(tuple(row) for row in part.gaussian.covariance.tolist()),
                    colour=tuple(part.gaussian.base_colour.tolist()),
                    anchor=None if part.anchor_self is None else tuple(part.anchor_self.tolist()),
                )
                for part in tmpl.parts
            ),
        )

    def dumps(self) -> str:
        """Serialize to indented JSON with the ``schema`` key."""
        return self.model_dump_json(by_alias=True, indent=2)


class PoseDocument(BaseModel):
    """Serialization of :class:`~posecast.template.PoseParams`."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    rotations: tuple[Triple, ...]
    scales: tuple[Triple, ...]
    translation: Triple = (0.0, 0.0, 0.0)

    @model_validator(mode="after")
    def _blocks_match(self) -> PoseDocument:
        if len(self.rotations) != len(self.scales):
            msg = f"{len(self.rotations)} rotations but {len(self.scales)} scales"
            raise ValueError(msg)
        return self

    def to_pose(self, num_parts: int | None = None) -> PoseParams:
        """Build pose parameters.

        Raises:
            DimensionMismatch: ``num_parts`` is given and differs from the document.

        """
        if num_parts is not None and len(self.rotations) != num_parts:
            raise DimensionMismatch("pose parts", num_parts, len(self.rotations))
        return PoseParams(
            rotations=torch.tensor(self.rotations, dtype=DTYPE).reshape(-1, 3),
            scales=torch.tensor(self.scales, dtype=DTYPE).reshape(-1, 3),
            translation=torch.tensor(self.translation, dtype=DTYPE),
        )

    @classmethod
    def from_pose(cls, pose: PoseParams) -> PoseDocument:
        """Serialize pose parameters."""
        pose = pose.detach()
        return cls(
            rotations=tuple(tuple(row) for row in pose.rotations.tolist()),
            scales=tuple(tuple(row) for row in pose.scales.tolist()),
            translation=tuple(pose.translation.tolist()),
        )
