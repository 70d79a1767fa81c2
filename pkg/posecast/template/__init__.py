"""Human shape template, pose parameters and the kinematic chain."""

from ._defaults import default_human_template
from ._document import PartDocument, PoseDocument, TemplateDocument
from ._kinematics import (
    SCALE_MAX,
    SCALE_MIN,
    PoseParams,
    ProjectedAnchors,
    TransformedTemplate,
    apply_pose,
    project_anchors,
)
from ._template import PartSpec, Template

__all__ = [
    "SCALE_MAX",
    "SCALE_MIN",
    "PartDocument",
    "PartSpec",
    "PoseDocument",
    "PoseParams",
    "ProjectedAnchors",
    "Template",
    "TemplateDocument",
    "TransformedTemplate",
    "apply_pose",
    "default_human_template",
    "project_anchors",
]
