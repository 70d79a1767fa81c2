"""Exact gradients through torch autograd and a central-difference checker."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from typing import Any

import torch
from pydantic import BaseModel, ConfigDict

from ..exceptions import NonFiniteGradient, NonFiniteObjective
from ..geometry import DTYPE

LOGGER = logging.getLogger(__name__)

Objective = Callable[[torch.Tensor], Any]
"""Scalar function of a 1-D float64 tensor built from torch operations."""

EPS_MIN = 1e-8
EPS_MAX = 1e-2
DEFAULT_EPS = 1e-5
"""Probe step used by the checks; chosen for 64-bit arithmetic."""

RELATIVE_FLOOR = 1e-8
"""Denominator floor of the relative error."""

ROUNDOFF_ULPS = 4
"""Units in the last place of each objective value a difference quotient may be off by."""


class GradientReport(BaseModel):
    """Analytic vs central-difference gradient of one objective at one point.

    The relative error of component ``i`` is
    ``max(|a_i - n_i| - ρ_i, 0) / max(|a_i|, |n_i|, 1e-8)``, where ``ρ_i`` is
    the resolution of the difference quotient: :data:`ROUNDOFF_ULPS` units in
    the last place of each of the two objective values, divided by ``2 eps``.
    A discrepancy smaller than ``ρ_i`` cannot be told apart from rounding of
    the objective itself.

    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    analytic: tuple[float, ...]
    numeric: tuple[float, ...]
    max_abs_err: float
    max_rel_err: float
    worst_index: int
    """Component with the largest relative error."""

    resolution: float
    """Largest ``ρ_i`` over all components."""

    eps: float

    def passed(self, threshold: float) -> bool:
        """Whether the largest relative error is below ``threshold``."""
        return self.max_rel_err < threshold


def _fresh(p: Any) -> torch.Tensor:
    return torch.as_tensor(p, dtype=DTYPE).detach().clone()


def gradient(objective: Objective, p: Any) -> torch.Tensor:
    """Exact ``∂objective/∂p`` by reverse-mode differentiation.

    A fresh leaf tensor is created for each call so no graph is shared
    between evaluations. Objectives that do not depend on ``p`` get a zero
    gradient.

    Raises:
        NonFiniteObjective: The objective is not finite at ``p``.
        NonFiniteGradient: A gradient component is NaN or infinite.

    """
    leaf = _fresh(p).requires_grad_(True)
    value = torch.as_tensor(objective(leaf), dtype=DTYPE)
    if not math.isfinite(float(value.detach())):
        msg = f"objective is not finite at p: {float(value.detach())}"
        raise NonFiniteObjective(msg)
    grad = None
    if value.requires_grad:
        (grad,) = torch.autograd.grad(value, leaf, allow_unused=True)
    if grad is None:
        return torch.zeros_like(leaf.detach())
    if not bool(torch.isfinite(grad).all()):
        bad = torch.nonzero(~torch.isfinite(grad)).flatten().tolist()
        msg = f"gradient has non-finite components at indices {bad}"
        raise NonFiniteGradient(msg)
    return grad.detach()


def _evaluate(objective: Objective, p: torch.Tensor) -> float:
    with torch.no_grad():
        value = float(torch.as_tensor(objective(p), dtype=DTYPE))
    if not math.isfinite(value):
        msg = f"objective is not finite at probe point: {value}"
        raise NonFiniteObjective(msg)
    return value


def finite_diff_check(
    objective: Objective,
    p: Any,
    eps: float = DEFAULT_EPS,
    *,
    analytic: Any | None = None,
) -> GradientReport:
    """Compare the analytic gradient with central differences.

    ``numeric[i] = (obj(p + eps e_i) - obj(p - eps e_i)) / (2 eps)``. Relative
    errors are computed as described on :class:`GradientReport`.

    Args:
        objective: Scalar objective.
        p: Evaluation point.
        eps: Probe step in ``[1e-8, 1e-2]``.
        analytic: Gradient to check; computed with :func:`gradient` when omitted.

    Raises:
        ValueError: ``eps`` is out of range.
        NonFiniteObjective: A probe evaluation is not finite.

    """
    if not EPS_MIN <= eps <= EPS_MAX:
        msg = f"eps must lie in [{EPS_MIN}, {EPS_MAX}], got {eps}"
        raise ValueError(msg)
    point = _fresh(p)
    analytic_grad = gradient(objective, point) if analytic is None else _fresh(analytic)
    numeric = torch.empty_like(point)
    resolution = torch.empty_like(point)
    for index in range(point.shape[0]):
        step = torch.zeros_like(point)
        step[index] = eps
        upper = _evaluate(objective, point + step)
        lower = _evaluate(objective, point - step)
        numeric[index] = (upper - lower) / (2.0 * eps)
        resolution[index] = ROUNDOFF_ULPS * (math.ulp(upper) + math.ulp(lower)) / (2.0 * eps)
    abs_err = (analytic_grad - numeric).abs()
    scale = torch.maximum(torch.maximum(analytic_grad.abs(), numeric.abs()), torch.full_like(numeric, RELATIVE_FLOOR))
    rel_err = torch.clamp(abs_err - resolution, min=0.0) / scale
    report = GradientReport(
        analytic=tuple(analytic_grad.tolist()),
        numeric=tuple(numeric.tolist()),
        max_abs_err=float(abs_err.max()) if abs_err.numel() else 0.0,
        max_rel_err=float(rel_err.max()) if rel_err.numel() else 0.0,
        worst_index=int(rel_err.argmax()) if rel_err.numel() else 0,
        resolution=float(resolution.max()) if resolution.numel() else 0.0,
        eps=eps,
    )
    LOGGER.debug(
        "gradient check: max_abs_err=%.3e max_rel_err=%.3e (index %d)",
        report.max_abs_err,
        report.max_rel_err,
        report.worst_index,
    )
    return report
