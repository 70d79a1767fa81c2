"""``posecast`` command-line entry point."""

from __future__ import annotations

import argparse
import logging
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from .. import __version__
from .._logging import LOG_ENV_VAR, configure_logging
from ._commands import (
    ExitCode,
    cmd_fit,
    cmd_gradcheck,
    cmd_render,
    cmd_template_export_grid,
    cmd_template_validate,
)
from ._config import RunConfig, parse_seeds

LOGGER = logging.getLogger(__name__)


def _common_flags() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    scene = parser.add_argument_group("scene")
    scene.add_argument("--template", type=Path, help="template JSON (default: built-in humanoid)")
    scene.add_argument("--pose", type=Path, help="pose JSON (default: identity pose)")
    scene.add_argument("--camera", type=Path, help="camera JSON (default: built-in camera)")
    scene.add_argument("--out", type=Path, help="primary output file")
    scene.add_argument("--width", type=int, help="image width in pixels")
    scene.add_argument("--height", type=int, help="image height in pixels")
    scene.add_argument("--samples", type=int, help="samples per ray (>= 2)")
    scene.add_argument("--background", type=float, nargs=3, metavar=("R", "G", "B"), help="background colour")
    scene.add_argument("--seed", type=int, help="random seed")
    scene.add_argument("--threads", type=int, help="renderer worker threads (output does not depend on it)")
    return parser


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per operation."""
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="posecast",
        description="Render a Gaussian body template and recover poses by analysis-by-synthesis.",
        epilog=f"Set {LOG_ENV_VAR}=DEBUG|INFO|WARNING|ERROR for diagnostics on stderr.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    render = commands.add_parser("render", parents=[common], help="render the scene to a PPM image")
    render.add_argument("--png", type=Path, help="also write a PNG")
    render.add_argument("--reference", action="store_true", default=None, help="use the scalar reference renderer")
    render.set_defaults(handler=cmd_render)

    gradcheck = commands.add_parser("gradcheck", parents=[common], help="check gradients against finite differences")
    gradcheck.add_argument("--target", type=Path, help="target PPM (default: render of the identity pose)")
    gradcheck.add_argument("--eps", type=float, help="finite-difference step in [1e-8, 1e-2]")
    gradcheck.add_argument("--iteration", type=int, help="iteration index selecting the regularizer weight")
    gradcheck.add_argument("--sabotage", action="store_true", default=None, help="corrupt the analytic gradient")
    gradcheck.set_defaults(handler=cmd_gradcheck)

    fit = commands.add_parser("fit", parents=[common], help="fit a pose to a target image")
    fit.add_argument("--target", type=Path, help="target PPM image")
    fit.add_argument("--iters", type=int, help="Adam iterations")
    fit.add_argument("--lr", type=float, help="Adam learning rate")
    fit.add_argument("--stop-below", type=float, help="stop once the reconstruction loss is at or below this")
    fit.add_argument("--log", type=Path, help="per-iteration CSV log (default: <out>.csv)")
    fit.add_argument("--side-by-side", type=Path, help="write fitted render next to the target")
    fit.add_argument("--experiment", action="store_true", default=None, help="run the synthetic recovery experiment")
    fit.add_argument("--seeds", type=parse_seeds, help="experiment seeds, e.g. 0-9")
    fit.set_defaults(handler=cmd_fit)

    validate = commands.add_parser("template-validate", parents=[common], help="validate a template file")
    validate.set_defaults(handler=cmd_template_validate)

    grid = commands.add_parser("template-export-grid", parents=[common], help="rasterize occupancy to a grid")
    grid.add_argument("--resolution", type=int, help="grid points per axis")
    grid.set_defaults(handler=cmd_template_export_grid)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code."""
    configure_logging()
    namespace = build_parser().parse_args(argv)
    try:
        config = RunConfig.from_namespace(namespace)
    except ValidationError as exc:
        for error in exc.errors():
            location = ".".join(str(part) for part in error["loc"]) or "arguments"
            LOGGER.error("%s: %s", location, error["msg"])  # noqa: TRY400
        return ExitCode.INVALID_INPUT
    return namespace.handler(config)
