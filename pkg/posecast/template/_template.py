"""Shape template: Gaussian body parts arranged on a kinematic tree."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import torch

from ..exceptions import InvalidTemplate
from ..geometry import GaussianPart, Vec3, as_vec3

ANCHOR_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class PartSpec:
    """A body part of the template in its rest configuration."""

    name: str
    """Unique identifier of the part."""

    gaussian: GaussianPart
    """Rest-pose ellipsoid."""

    parent: int | None = None
    """Index of the parent part. :data:`None` for the root."""

    anchor_parent: Vec3 | None = None
    """Overlap point with the parent, owned by the parent."""

    anchor_self: Vec3 | None = None
    """The same overlap point, owned by this part."""

    def __post_init__(self) -> None:
        """Coerce anchors to tensors."""
        if self.anchor_parent is not None:
            object.__setattr__(self, "anchor_parent", as_vec3(self.anchor_parent, name="anchor_parent"))
        if self.anchor_self is not None:
            object.__setattr__(self, "anchor_self", as_vec3(self.anchor_self, name="anchor_self"))

    @property
    def is_root(self) -> bool:
        """Whether this part is the root of the kinematic tree."""
        return self.parent is None


@dataclass(frozen=True, eq=False)
class Template:
    """``K`` Gaussian parts stored in topological order (parents first)."""

    parts: tuple[PartSpec, ...]

    def __post_init__(self) -> None:
        """Validate the tree structure and anchors.

        Raises:
            InvalidTemplate: The parts do not form a valid rooted tree.

        """
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise InvalidTemplate("template must contain at least one part")
        roots = [index for index, part in enumerate(self.parts) if part.is_root]
        if len(roots) != 1:
            msg = f"template must have exactly one root, found {len(roots)}"
            raise InvalidTemplate(msg)
        names = [part.name for part in self.parts]
        if len(set(names)) != len(names):
            msg = f"part names must be unique: {names}"
            raise InvalidTemplate(msg)
        for index, part in enumerate(self.parts):
            if part.is_root:
                continue
            if part.parent is None or not 0 <= part.parent < index:
                msg = f"part {part.name!r} must come after its parent (parent index {part.parent})"
                raise InvalidTemplate(msg)
            if part.anchor_parent is None or part.anchor_self is None:
                msg = f"part {part.name!r} is missing its anchor"
                raise InvalidTemplate(msg)
            gap = float((part.anchor_parent - part.anchor_self).abs().max())
            if gap > ANCHOR_TOLERANCE:
                msg = f"anchors of part {part.name!r} do not coincide in the rest pose"
                raise InvalidTemplate(msg)

    def __len__(self) -> int:
        """Number of parts."""
        return len(self.parts)

    @property
    def names(self) -> tuple[str, ...]:
        """Part names in processing order."""
        return tuple(part.name for part in self.parts)

    @property
    def root_index(self) -> int:
        """Index of the root (core) part."""
        return next(index for index, part in enumerate(self.parts) if part.is_root)

    def index_of(self, name: str) -> int:
        """Index of the part called ``name``.

        Raises:
            KeyError: No such part.

        """
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None

    @classmethod
    def from_parts(cls, parts: list[dict[str, Any]]) -> Template:
        """Build a template from plain part records.

        Each record has ``name``, ``parent`` (a part name or :data:`None`),
        ``mean``, ``covariance``, ``colour`` and ``anchor``. Parents must be
        listed before their children.

        Raises:
            InvalidTemplate: A parent is unknown or listed after its child.

        """
        index: dict[str, int] = {}
        specs: list[PartSpec] = []
        for position, record in enumerate(parts):
            parent_name = record.get("parent")
            if parent_name is not None and parent_name not in index:
                msg = f"parent {parent_name!r} of part {record['name']!r} must be listed before it"
                raise InvalidTemplate(msg)
            anchor = record.get("anchor")
            specs.append(
                PartSpec(
                    name=record["name"],
                    gaussian=GaussianPart(
                        mean=record["mean"],
                        covariance=record["covariance"],
                        base_colour=record["colour"],
                    ),
                    parent=None if parent_name is None else index[parent_name],
                    anchor_parent=anchor,
                    anchor_self=None if anchor is None else torch.as_tensor(anchor, dtype=torch.float64).clone(),
                )
            )
            index[record["name"]] = position
        return cls(parts=tuple(specs))
