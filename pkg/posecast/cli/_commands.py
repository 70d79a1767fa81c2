"""Implementation of the ``posecast`` subcommands."""

from __future__ import annotations

import functools
import json
import logging
from collections.abc import Callable
from enum import IntEnum
from pathlib import Path
from typing import Any

import torch

from ..autodiff import RenderObjective, finite_diff_check, gradient, pose_to_vector, sample_probe_pose
from ..exceptions import NonFiniteUpdate, PosecastError
from ..fitter import ExperimentConfig, FitOptions, fit_pose, run_experiments
from ..io import ImageFormatError, read_ppm, side_by_side, write_grid, write_png, write_ppm
from ..renderer import occupancy_grid, render, render_reference
from ..template import PoseDocument, PoseParams, TemplateDocument, apply_pose
from ._config import RunConfig

LOGGER = logging.getLogger(__name__)

GRADCHECK_THRESHOLD = 1e-3
GRADCHECK_SIZE = 32


class ExitCode(IntEnum):
    """Process exit status."""

    OK = 0
    FAILED = 1
    """Gradient check over threshold or fit not converged."""

    INVALID_INPUT = 2
    IO_ERROR = 3
    NON_FINITE = 4


def _emit(payload: Any) -> None:
    print(json.dumps(payload, indent=2))  # noqa: T201


def handle_errors(func: Callable[[RunConfig], ExitCode]) -> Callable[[RunConfig], int]:
    """Map exceptions raised by a command to its exit code."""

    @functools.wraps(func)
    def wrapper(config: RunConfig) -> int:
        try:
            return int(func(config))
        except NonFiniteUpdate as exc:
            LOGGER.error("%s", exc)  # noqa: TRY400
            return ExitCode.NON_FINITE
        except (PosecastError, ImageFormatError, ValueError, KeyError) as exc:
            LOGGER.error("invalid input: %s", exc)  # noqa: TRY400
            return ExitCode.INVALID_INPUT
        except OSError as exc:
            LOGGER.error("i/o error: %s", exc)  # noqa: TRY400
            return ExitCode.IO_ERROR

    return wrapper


@handle_errors
def cmd_render(config: RunConfig) -> ExitCode:
    """Render the scene to a PPM and print alpha coverage statistics."""
    template = config.load_template()
    pose = config.load_pose(len(template))
    camera = config.load_camera()
    settings = config.render_settings()
    with torch.no_grad():
        posed = apply_pose(template, pose)
        if config.reference:
            image = render_reference(posed, camera, settings)
        else:
            image = render(posed, camera, settings, threads=config.threads)
    out = config.out or Path("render.ppm")
    write_ppm(out, image)
    if config.png:
        write_png(config.png, image)
    _emit({"out": str(out), "width": image.width, "height": image.height, **image.coverage()})
    return ExitCode.OK


@handle_errors
def cmd_gradcheck(config: RunConfig) -> ExitCode:
    """Compare analytic and finite-difference gradients of the full objective."""
    template = config.load_template()
    camera = config.load_camera()
    settings = config.render_settings(size=GRADCHECK_SIZE)
    if config.pose is None:
        pose = sample_probe_pose(config.seed, template, camera, settings)
    else:
        pose = config.load_pose(len(template))
    if config.target is None:
        with torch.no_grad():
            target = render(apply_pose(template, PoseParams.identity(len(template))), camera, settings)
    else:
        target = read_ppm(config.target)
    objective = RenderObjective(
        template=template,
        camera=camera,
        settings=settings,
        target=target,
        iteration=config.iteration,
        threads=config.threads,
    )
    point = pose_to_vector(pose)
    analytic = gradient(objective, point)
    if config.sabotage:
        analytic = analytic + 1.0
    report = finite_diff_check(objective, point, config.eps, analytic=analytic)
    print(report.model_dump_json(indent=2))  # noqa: T201
    return ExitCode.OK if report.passed(GRADCHECK_THRESHOLD) else ExitCode.FAILED


def _run_experiment(config: RunConfig) -> ExitCode:
    settings = config.render_settings()
    summary = run_experiments(
        config.seeds,
        ExperimentConfig(
            width=settings.width,
            height=settings.height,
            samples_per_ray=settings.samples_per_ray,
            iters=config.iters,
            lr=config.lr,
        ),
    )
    text = summary.model_dump_json(indent=2)
    if config.out:
        config.out.write_text(text)
    print(text)  # noqa: T201
    return ExitCode.OK


@handle_errors
def cmd_fit(config: RunConfig) -> ExitCode:
    """Fit a pose to a target image, or run the synthetic experiment."""
    if config.experiment:
        return _run_experiment(config)
    if config.target is None:
        raise ValueError("--target is required unless --experiment is given")
    target = read_ppm(config.target)
    template = config.load_template()
    camera = config.load_camera()
    settings = config.render_settings().model_copy(
        update={"width": config.width or target.width, "height": config.height or target.height}
    )
    init = config.load_pose(len(template))
    result = fit_pose(
        target,
        template,
        camera,
        settings,
        init,
        FitOptions(
            iters=config.iters,
            lr=config.lr,
            seed=config.seed,
            stop_below=config.stop_below,
            threads=config.threads,
        ),
    )
    out = config.out or Path("fit.json")
    out.write_text(PoseDocument.from_pose(result.pose).model_dump_json(indent=2))
    (config.log or out.with_suffix(".csv")).write_text(result.to_csv())
    if config.side_by_side:
        with torch.no_grad():
            fitted = render(apply_pose(template, result.pose), camera, settings, threads=config.threads)
        write_ppm(config.side_by_side, side_by_side(fitted, target))
    _emit(
        {
            "out": str(out),
            "converged": result.converged,
            "final_recon": result.final_recon,
            "iterations": len(result.log),
            "wall_time": result.wall_time,
        }
    )
    return ExitCode.OK if result.converged else ExitCode.FAILED


@handle_errors
def cmd_template_validate(config: RunConfig) -> ExitCode:
    """Validate a template file and optionally write its canonical form."""
    template = config.load_template()
    if config.out:
        config.out.write_text(TemplateDocument.from_template(template).dumps())
    _emit(
        {
            "valid": True,
            "parts": len(template),
            "root": template.names[template.root_index],
            "names": list(template.names),
        }
    )
    return ExitCode.OK


@handle_errors
def cmd_template_export_grid(config: RunConfig) -> ExitCode:
    """Rasterize the posed template's occupancy to a dense ``.npy`` grid."""
    template = config.load_template()
    pose = config.load_pose(len(template))
    grid = occupancy_grid(apply_pose(template, pose), config.resolution)
    out = config.out or Path("occupancy.npy")
    sidecar = write_grid(out, grid)
    _emit(
        {
            "out": str(out),
            "metadata": str(sidecar),
            "shape": list(grid.values.shape),
            "lower": list(grid.lower),
            "upper": list(grid.upper),
        }
    )
    return ExitCode.OK
