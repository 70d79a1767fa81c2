"""Pytest configuration, fixtures, and plugins."""

from __future__ import annotations

import logging
import os
from typing import TYPE_CHECKING

import pytest

if TYPE_CHECKING:
    from collections.abc import Iterator

    from pytest_mock import MockerFixture

ENV_REMOVE = ("POSECAST_LOG",)
"""Environment variables that will be removed if present."""


@pytest.fixture(autouse=True, scope="session")
def environ(session_mocker: MockerFixture) -> dict[str, str]:
    """Patch ``os.environ``."""
    values = {key: value for key, value in os.environ.items() if key not in ENV_REMOVE}
    return session_mocker.patch.dict(os.environ, values, clear=True)


@pytest.fixture(autouse=True)
def posecast_logger() -> Iterator[logging.Logger]:
    """Restore the ``posecast`` logger after each test."""
    logger = logging.getLogger("posecast")
    handlers = list(logger.handlers)
    level = logger.level
    yield logger
    logger.handlers[:] = handlers
    logger.setLevel(level)
