"""Command-line interface."""

from ._commands import (
    ExitCode,
    cmd_fit,
    cmd_gradcheck,
    cmd_render,
    cmd_template_export_grid,
    cmd_template_validate,
)
from ._config import RunConfig, parse_seeds
from ._main import build_parser, main

__all__ = [
    "ExitCode",
    "RunConfig",
    "build_parser",
    "cmd_fit",
    "cmd_gradcheck",
    "cmd_render",
    "cmd_template_export_grid",
    "cmd_template_validate",
    "main",
    "parse_seeds",
]
