"""Axis-angle rotations and shear-free affine maps."""

from __future__ import annotations

from typing import Any

import torch

from ..exceptions import NonPositiveScale
from ._types import DTYPE, Mat3, Vec3, as_vec3

SMALL_ANGLE = 1e-8
"""Below this rotation angle the second-order series of :func:`rodrigues` is used."""


def skew(v: Vec3) -> Mat3:
    """Cross-product matrix ``[v]_x`` so that ``skew(v) @ w == cross(v, w)``."""
    zero = torch.zeros_like(v[..., 0])
    x, y, z = v[..., 0], v[..., 1], v[..., 2]
    return torch.stack(
        [
            torch.stack([zero, -z, y], dim=-1),
            torch.stack([z, zero, -x], dim=-1),
            torch.stack([-y, x, zero], dim=-1),
        ],
        dim=-2,
    )


def rodrigues(r: Any) -> Mat3:
    """Convert an axis-angle vector to a rotation matrix.

    ``R = I + A(θ)[r]_x + B(θ)[r]_x²`` with ``A = sin θ / θ`` and
    ``B = (1 - cos θ) / θ²``. For ``θ < 1e-8`` the second-order series
    ``A ≈ 1 - θ²/6``, ``B ≈ 1/2 - θ²/24`` is used so the value and its
    gradient stay finite at ``r = 0``.

    Args:
        r: Axis-angle vector(s), shape ``(..., 3)``.

    Returns:
        Rotation matrices of shape ``(..., 3, 3)``.

    """
    r = as_vec3(r, name="rotation")
    theta_sq = r[..., 0] * r[..., 0] + r[..., 1] * r[..., 1] + r[..., 2] * r[..., 2]
    small = theta_sq < SMALL_ANGLE * SMALL_ANGLE
    # keep the untaken branch finite, torch.where still differentiates it
    safe_sq = torch.where(small, torch.ones_like(theta_sq), theta_sq)
    theta = torch.sqrt(safe_sq)
    a = torch.where(small, 1.0 - theta_sq / 6.0, torch.sin(theta) / theta)
    b = torch.where(small, 0.5 - theta_sq / 24.0, (1.0 - torch.cos(theta)) / safe_sq)
    k = skew(r)
    eye = torch.eye(3, dtype=DTYPE).expand(k.shape)
    return eye + a[..., None, None] * k + b[..., None, None] * (k @ k)


def compose_affine(r: Any, s: Any) -> Mat3:
    """Shear-free affine map ``H = rodrigues(r) @ diag(s)``.

    Raises:
        NonPositiveScale: A component of ``s`` is ``<= 0``.

    """
    s = as_vec3(s, name="scale")
    if bool((s.detach() <= 0).any()):
        raise NonPositiveScale(s.detach().tolist())
    return rodrigues(r) * s[..., None, :]


def geodesic_angle(rot_a: Mat3, rot_b: Mat3) -> torch.Tensor:
    """Angle in radians of the relative rotation ``rot_aᵀ @ rot_b``.

    Taken as ``atan2(sin θ, cos θ)`` from the antisymmetric part and the trace,
    which stays accurate near zero and near a half turn. Equal inputs give
    exactly zero.

    """
    relative = rot_a.transpose(-1, -2) @ rot_b
    cosine = (relative.diagonal(dim1=-2, dim2=-1).sum(-1) - 1.0) / 2.0
    antisym = relative - relative.transpose(-1, -2)
    axis = torch.stack([antisym[..., 2, 1], antisym[..., 0, 2], antisym[..., 1, 0]], dim=-1)
    return torch.atan2(axis.norm(dim=-1) / 2.0, cosine)
