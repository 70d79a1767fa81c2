"""Gaussian ellipsoid body parts and their occupancy field."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any

import torch

from ..exceptions import InvalidGaussian, SingularTransform
from ._types import Mat3, Vec3, as_mat3, as_vec3

SYMMETRY_TOLERANCE = 1e-12
SINGULAR_DETERMINANT = 1e-12


@dataclass(frozen=True, eq=False)
class GaussianPart:
    """One body part of the shape template.

    Instances are validated on construction and never mutated.

    """

    mean: Vec3
    """Centre of the ellipsoid."""

    covariance: Mat3
    """Symmetric positive-definite shape matrix."""

    base_colour: Vec3
    """RGB colour, componentwise in ``[0, 1]``."""

    def __post_init__(self) -> None:
        """Coerce fields to tensors and validate invariants."""
        object.__setattr__(self, "mean", as_vec3(self.mean, name="mean"))
        object.__setattr__(self, "covariance", as_mat3(self.covariance, name="covariance"))
        object.__setattr__(self, "base_colour", as_vec3(self.base_colour, name="base_colour"))
        cov = self.covariance.detach()
        asymmetry = float((cov - cov.transpose(-1, -2)).abs().max())
        if asymmetry > SYMMETRY_TOLERANCE:
            msg = f"covariance is not symmetric (max |Σ - Σᵀ| = {asymmetry:.3e})"
            raise InvalidGaussian(msg)
        smallest = float(torch.linalg.eigvalsh(cov).min())
        if smallest <= 0:
            msg = f"covariance is not positive-definite (smallest eigenvalue {smallest:.3e})"
            raise InvalidGaussian(msg)
        colour = self.base_colour.detach()
        if bool(((colour < 0) | (colour > 1)).any()):
            msg = f"base_colour must lie in [0, 1], got {colour.tolist()}"
            raise InvalidGaussian(msg)

    @cached_property
    def precision(self) -> Mat3:
        """Inverse of the covariance."""
        return torch.linalg.inv(self.covariance)


def transform_gaussian(g: GaussianPart, h: Any, t: Any) -> GaussianPart:
    """Push a Gaussian through the affine map ``x ↦ H x + t``.

    ``mean' = H mean + t`` and ``Σ' = H Σ Hᵀ``; the colour is unchanged.

    Raises:
        SingularTransform: ``|det H| <= 1e-12``.

    """
    h = as_mat3(h, name="H")
    t = as_vec3(t, name="translation")
    det = float(torch.linalg.det(h.detach()))
    if abs(det) <= SINGULAR_DETERMINANT:
        raise SingularTransform(det)
    cov = h @ g.covariance @ h.transpose(-1, -2)
    return GaussianPart(
        mean=h @ g.mean + t,
        covariance=0.5 * (cov + cov.transpose(-1, -2)),
        base_colour=g.base_colour,
    )


def mahalanobis_sq(diff: Vec3, precision: Mat3) -> torch.Tensor:
    """Quadratic form ``diffᵀ P diff`` over the trailing axis.

    Written out term by term (no matmul) so every element is computed by the
    same sequence of operations whatever the batch shape.

    """
    dx, dy, dz = diff[..., 0], diff[..., 1], diff[..., 2]
    p = precision
    return (
        p[0, 0] * dx * dx
        + p[1, 1] * dy * dy
        + p[2, 2] * dz * dz
        + (p[0, 1] + p[1, 0]) * dx * dy
        + (p[0, 2] + p[2, 0]) * dx * dz
        + (p[1, 2] + p[2, 1]) * dy * dz
    )


def occupancy_at(g: GaussianPart, x: Any) -> torch.Tensor:
    """Occupancy ``exp(-½ (x-μ)ᵀ Σ⁻¹ (x-μ))`` of a part, in ``(0, 1]``.

    Args:
        g: The part.
        x: Point(s), shape ``(..., 3)``.

    """
    x = as_vec3(x, name="x")
    return torch.exp(-0.5 * mahalanobis_sq(x - g.mean, g.precision))
