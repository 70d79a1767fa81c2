"""Functional Adam optimizer over a flat parameter vector."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any

import torch

from ..exceptions import DimensionMismatch, NonFiniteUpdate
from ..geometry import DTYPE
from ..template import SCALE_MAX, SCALE_MIN


@dataclass(frozen=True, eq=False)
class AdamState:
    """Moments and hyperparameters of Adam.

    ``scale_block`` marks the slice of the parameter vector holding scales;
    it is re-clamped to ``[SCALE_MIN, SCALE_MAX]`` after every step.

    """

    m: torch.Tensor
    """First-moment estimate."""

    v: torch.Tensor
    """Second-moment estimate, componentwise ``>= 0``."""

    step: int = 0
    lr: float = 0.01
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    scale_block: slice | None = None

    @classmethod
    def initial(cls, size: int, **kwargs: Any) -> AdamState:
        """Zero moments for a vector of ``size`` parameters."""
        return cls(m=torch.zeros(size, dtype=DTYPE), v=torch.zeros(size, dtype=DTYPE), **kwargs)


def adam_step(state: AdamState, p: torch.Tensor, g: torch.Tensor) -> tuple[AdamState, torch.Tensor]:
    """One bias-corrected Adam update ``p - lr m̂ / (√v̂ + ε)``.

    Returns:
        The advanced state and the updated parameters; the inputs are not modified.

    Raises:
        DimensionMismatch: ``p``, ``g`` and the moments differ in shape.
        NonFiniteUpdate: The update produced NaN or infinity.

    """
    p = p.detach()
    g = g.detach()
    if p.shape != state.m.shape or g.shape != state.m.shape:
        raise DimensionMismatch("adam parameters", tuple(state.m.shape), (tuple(p.shape), tuple(g.shape)))
    step = state.step + 1
    m = state.beta1 * state.m + (1.0 - state.beta1) * g
    v = state.beta2 * state.v + (1.0 - state.beta2) * (g * g)
    m_hat = m / (1.0 - state.beta1**step)
    v_hat = v / (1.0 - state.beta2**step)
    updated = p - state.lr * m_hat / (torch.sqrt(v_hat) + state.eps)
    if state.scale_block is not None:
        updated = updated.clone()
        updated[state.scale_block] = torch.clamp(updated[state.scale_block], SCALE_MIN, SCALE_MAX)
    if not bool(torch.isfinite(updated).all()):
        msg = f"adam step {step} produced non-finite parameters"
        raise NonFiniteUpdate(msg)
    return replace(state, m=m, v=v, step=step), updated
