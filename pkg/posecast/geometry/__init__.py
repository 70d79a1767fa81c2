"""Elementary 3D math: axis-angle rotations, affine maps and Gaussian ellipsoid fields."""

from ._gaussian import GaussianPart, mahalanobis_sq, occupancy_at, transform_gaussian
from ._rotation import compose_affine, geodesic_angle, rodrigues, skew
from ._types import DTYPE, Mat3, Vec3, as_mat3, as_vec3

__all__ = [
    "DTYPE",
    "GaussianPart",
    "Mat3",
    "Vec3",
    "as_mat3",
    "as_vec3",
    "compose_affine",
    "geodesic_angle",
    "mahalanobis_sq",
    "occupancy_at",
    "rodrigues",
    "skew",
    "transform_gaussian",
]
