"""Logging configuration driven by the ``POSECAST_LOG`` environment variable."""

from __future__ import annotations

import logging
import os
from collections.abc import Mapping

LOG_ENV_VAR = "POSECAST_LOG"
"""Environment variable holding the log level."""

LOG_FORMAT = "%(levelname)s:%(name)s: %(message)s"

_HANDLER_NAME = "posecast.stderr"


def resolve_level(value: str | None) -> int:
    """Convert the value of ``POSECAST_LOG`` to a :mod:`logging` level.

    Accepts a level name (case insensitive) or an integer. Unknown values
    fall back to ``WARNING``.

    """
    if not value:
        return logging.WARNING
    value = value.strip()
    if value.isdigit():
        return int(value)
    level = logging.getLevelName(value.upper())
    return level if isinstance(level, int) else logging.WARNING


def configure_logging(*, environ: Mapping[str, str] | None = None) -> logging.Logger:
    """Attach a single stderr handler to the ``posecast`` logger.

    Calling this more than once replaces the level but never stacks handlers.

    Args:
        environ: Environment variables. Defaults to :data:`os.environ`.

    """
    env = os.environ if environ is None else environ
    logger = logging.getLogger("posecast")
    logger.setLevel(resolve_level(env.get(LOG_ENV_VAR)))
    if not any(handler.get_name() == _HANDLER_NAME for handler in logger.handlers):
        handler = logging.StreamHandler()
        handler.set_name(_HANDLER_NAME)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    return logger
