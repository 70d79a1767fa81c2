"""Pose recovery by Adam on the render objective."""

from __future__ import annotations

import csv
import io
import logging
import math
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING

import torch
from pydantic import BaseModel, ConfigDict, Field

from ..autodiff import ParamLayout, RenderObjective, pose_to_vector, vector_to_pose
from ..exceptions import DimensionMismatch, NonFiniteUpdate
from ..template import PoseDocument
from ._adam import AdamState, adam_step

if TYPE_CHECKING:
    from ..loss import LossBreakdown
    from ..renderer import Camera, ImageBuffer, RenderSettings
    from ..template import PoseParams, Template

LOGGER = logging.getLogger(__name__)

CONVERGENCE_THRESHOLD = 1e-3
"""Final reconstruction loss below which a fit counts as converged."""

CSV_COLUMNS = ("iter", "recon", "boundary", "rot_reg", "alpha", "total", "grad_norm")


class FitOptions(BaseModel):
    """Optimizer settings of :func:`fit_pose`."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    iters: int = Field(default=800, ge=0)
    lr: float = Field(default=0.01, gt=0.0)
    beta1: float = Field(default=0.9, ge=0.0, lt=1.0)
    beta2: float = Field(default=0.999, ge=0.0, lt=1.0)
    eps_adam: float = Field(default=1e-8, gt=0.0)
    seed: int = 0
    """Recorded with the result; the fit itself draws no random numbers."""

    stop_below: float | None = Field(default=None, ge=0.0)
    """Stop as soon as the reconstruction loss is at or below this value."""

    convergence_threshold: float = Field(default=CONVERGENCE_THRESHOLD, gt=0.0)
    use_recon: bool = True
    use_boundary: bool = True
    use_rotation_reg: bool = True
    threads: int = Field(default=1, ge=1)


class FitLogEntry(BaseModel):
    """One optimizer iteration, evaluated before the step is taken."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    iter: int
    recon: float
    boundary: float
    rot_reg: float
    alpha: float
    total: float
    objective: float
    grad_norm: float
    best_total: float
    """Smallest ``total`` logged so far, including this row."""


class FitResultDocument(BaseModel):
    """JSON form of :class:`FitResult`."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    pose: PoseDocument
    converged: bool
    final_recon: float
    iterations: int
    wall_time: float
    seed: int
    log: tuple[FitLogEntry, ...]


@dataclass(frozen=True, eq=False)
class FitResult:
    """Outcome of :func:`fit_pose`."""

    pose: PoseParams
    log: tuple[FitLogEntry, ...]
    converged: bool
    final_recon: float
    wall_time: float
    seed: int = 0

    def to_document(self) -> FitResultDocument:
        """JSON-serializable form."""
        return FitResultDocument(
            pose=PoseDocument.from_pose(self.pose),
            converged=self.converged,
            final_recon=self.final_recon,
            iterations=len(self.log),
            wall_time=self.wall_time,
            seed=self.seed,
            log=self.log,
        )

    def to_csv(self) -> str:
        """Per-iteration log as CSV with the columns of :data:`CSV_COLUMNS`."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for entry in self.log:
            writer.writerow([repr(getattr(entry, column)) for column in CSV_COLUMNS])
        return buffer.getvalue()


def _entry(iteration: int, breakdown: LossBreakdown, objective: float, grad_norm: float, best: float) -> FitLogEntry:
    record = breakdown.to_record()
    return FitLogEntry(
        iter=iteration,
        objective=objective,
        grad_norm=grad_norm,
        best_total=min(best, record["total"]),
        **record,
    )


def fit_pose(
    target: ImageBuffer,
    tmpl: Template,
    cam: Camera,
    settings: RenderSettings,
    init: PoseParams,
    opts: FitOptions | None = None,
) -> FitResult:
    """Recover pose parameters whose render matches ``target``.

    Runs ``opts.iters`` Adam steps on the objective evaluated at the
    iteration index (so the rotation regularizer decays). Every iteration
    is logged before its step.

    Raises:
        DimensionMismatch: ``target`` does not match ``settings``.
        NonFiniteUpdate: The objective, gradient or update became non-finite;
            ``exc.partial`` holds the result so far.

    """
    opts = opts or FitOptions()
    if (target.height, target.width) != (settings.height, settings.width):
        raise DimensionMismatch("target image", (settings.height, settings.width), (target.height, target.width))
    objective = RenderObjective(
        template=tmpl,
        camera=cam,
        settings=settings,
        target=target.detach(),
        use_recon=opts.use_recon,
        use_boundary=opts.use_boundary,
        use_rotation_reg=opts.use_rotation_reg,
        threads=opts.threads,
    )
    layout = ParamLayout(num_parts=len(tmpl))
    vector = pose_to_vector(init.clamped()).detach().clone()
    state = AdamState.initial(
        layout.size,
        lr=opts.lr,
        beta1=opts.beta1,
        beta2=opts.beta2,
        eps=opts.eps_adam,
        scale_block=layout.scales,
    )
    log: list[FitLogEntry] = []
    best = math.inf
    started = time.perf_counter()

    def partial() -> FitResult:
        return FitResult(
            pose=vector_to_pose(vector).detach(),
            log=tuple(log),
            converged=False,
            final_recon=log[-1].recon if log else math.nan,
            wall_time=time.perf_counter() - started,
            seed=opts.seed,
        )

    for iteration in range(opts.iters):
        leaf = vector.clone().requires_grad_(True)
        evaluation = objective.evaluate(leaf, iteration)
        if evaluation.objective.requires_grad:
            (grad,) = torch.autograd.grad(evaluation.objective, leaf)
        else:
            grad = torch.zeros_like(vector)
        grad_norm = float(grad.norm())
        entry = _entry(iteration, evaluation.breakdown, float(evaluation.objective.detach()), grad_norm, best)
        best = entry.best_total
        log.append(entry)
        LOGGER.debug("iter %d: total=%.6g recon=%.6g grad_norm=%.3g", iteration, entry.total, entry.recon, grad_norm)
        if not (math.isfinite(entry.total) and math.isfinite(grad_norm)):
            msg = f"non-finite loss or gradient at iteration {iteration}"
            raise NonFiniteUpdate(msg, partial=partial())
        if opts.stop_below is not None and entry.recon <= opts.stop_below:
            LOGGER.info("reconstruction loss %.3g reached stop threshold at iteration %d", entry.recon, iteration)
            break
        try:
            state, vector = adam_step(state, vector, grad)
        except NonFiniteUpdate as exc:
            exc.partial = partial()
            raise

    with torch.no_grad():
        final = objective.evaluate(vector, len(log))
    final_recon = float(final.breakdown.recon.detach())
    result = FitResult(
        pose=vector_to_pose(vector).detach(),
        log=tuple(log),
        converged=final_recon < opts.convergence_threshold,
        final_recon=final_recon,
        wall_time=time.perf_counter() - started,
        seed=opts.seed,
    )
    LOGGER.info(
        "fit finished after %d iteration(s): recon=%.3g converged=%s (%.1fs)",
        len(log),
        final_recon,
        result.converged,
        result.wall_time,
    )
    return result
