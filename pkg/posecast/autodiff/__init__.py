"""Gradients of the render objective and a finite-difference checker."""

from ._gradient import (
    DEFAULT_EPS,
    EPS_MAX,
    EPS_MIN,
    ROUNDOFF_ULPS,
    GradientReport,
    Objective,
    finite_diff_check,
    gradient,
)
from ._objective import Evaluation, RenderObjective
from ._params import ParamLayout, ParamVector, pose_to_vector, vector_to_pose
from ._probe import KINK_MARGIN, random_rotations, sample_probe_pose

__all__ = [
    "DEFAULT_EPS",
    "EPS_MAX",
    "EPS_MIN",
    "KINK_MARGIN",
    "ROUNDOFF_ULPS",
    "Evaluation",
    "GradientReport",
    "Objective",
    "ParamLayout",
    "ParamVector",
    "RenderObjective",
    "finite_diff_check",
    "gradient",
    "pose_to_vector",
    "random_rotations",
    "sample_probe_pose",
    "vector_to_pose",
]
