"""Tensor aliases and coercion helpers shared by the math core."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

import torch

from ..exceptions import DimensionMismatch

if TYPE_CHECKING:
    from typing_extensions import TypeAlias

DTYPE = torch.float64
"""All internal arithmetic is done in 64-bit floating point."""

Vec3: TypeAlias = torch.Tensor
"""Tensor of shape ``(..., 3)`` and dtype :data:`DTYPE`."""

Mat3: TypeAlias = torch.Tensor
"""Tensor of shape ``(..., 3, 3)`` and dtype :data:`DTYPE`, row-major."""


def _as_tensor(value: Any) -> torch.Tensor:
    if isinstance(value, torch.Tensor):
        return value if value.dtype == DTYPE else value.to(DTYPE)
    return torch.as_tensor(value, dtype=DTYPE)


def as_vec3(value: Any, *, name: str = "vector") -> Vec3:
    """Coerce a sequence, array or tensor to a :data:`Vec3`.

    Tensors that already have the right dtype are returned as-is so autograd
    history is preserved.

    Raises:
        DimensionMismatch: The trailing dimension is not 3.
        ValueError: A component is not finite.

    """
    tensor = _as_tensor(value)
    if tensor.ndim == 0 or tensor.shape[-1] != 3:  # noqa: PLR2004
        raise DimensionMismatch(name, "(..., 3)", tuple(tensor.shape))
    if not bool(torch.isfinite(tensor.detach()).all()):
        msg = f"{name} must be finite, got {tensor.detach().tolist()}"
        raise ValueError(msg)
    return tensor


def as_mat3(value: Any, *, name: str = "matrix") -> Mat3:
    """Coerce a nested sequence, array or tensor to a :data:`Mat3`.

    Raises:
        DimensionMismatch: The trailing dimensions are not ``(3, 3)``.
        ValueError: An entry is not finite.

    """
    tensor = _as_tensor(value)
    if tensor.ndim < 2 or tuple(tensor.shape[-2:]) != (3, 3):  # noqa: PLR2004
        raise DimensionMismatch(name, "(..., 3, 3)", tuple(tensor.shape))
    if not bool(torch.isfinite(tensor.detach()).all()):
        msg = f"{name} must be finite"
        raise ValueError(msg)
    return tensor
