"""Pytest configuration, fixtures, and plugins."""

from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING, Any

import pytest

from posecast.renderer import Camera, RenderSettings
from posecast.template import default_human_template

if TYPE_CHECKING:
    from collections.abc import Callable

    from posecast.template import Template

TEST_DIR = Path(__file__).parent


class GoldenFiles:
    """Oracle files under ``tests/fixtures/golden/``.

    A missing file, or every file when ``--regen-golden`` is given, is written
    from its producer before it is read back. Image oracles are produced by the
    scalar reference renderer; the rest freeze results for regression checks.

    """

    def __init__(self, directory: Path, *, regen: bool = False) -> None:
        """Instantiate class."""
        self.directory = directory
        self.regen = regen

    def read_bytes(self, name: str, produce: Callable[[], bytes]) -> bytes:
        """Contents of ``name``, written from ``produce()`` first when needed."""
        path = self.directory / name
        if self.regen or not path.is_file():
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(produce())
        return path.read_bytes()

    def read_json(self, name: str, produce: Callable[[], Any]) -> Any:
        """Parsed JSON contents of ``name``, written from ``produce()`` first when needed."""
        return json.loads(
            self.read_bytes(name, lambda: (json.dumps(produce(), indent=2, sort_keys=True) + "\n").encode())
        )


def pytest_addoption(parser: pytest.Parser) -> None:
    """Add command line options."""
    parser.addoption(
        "--regen-golden",
        action="store_true",
        default=False,
        help="rewrite golden images with the reference renderer instead of comparing against them",
    )


@pytest.fixture(scope="session")
def test_fixture_dir() -> Path:
    """Return path to the ``tests/fixtures/`` directory."""
    return TEST_DIR / "fixtures"


@pytest.fixture(scope="session")
def golden_dir(test_fixture_dir: Path) -> Path:
    """Return path to the ``tests/fixtures/golden/`` directory."""
    return test_fixture_dir / "golden"


@pytest.fixture(scope="session")
def regen_golden(request: pytest.FixtureRequest) -> bool:
    """Whether golden files should be rewritten."""
    return bool(request.config.getoption("--regen-golden"))


@pytest.fixture(scope="session")
def golden(golden_dir: Path, regen_golden: bool) -> GoldenFiles:
    """Golden oracle files."""
    return GoldenFiles(golden_dir, regen=regen_golden)


@pytest.fixture(scope="session")
def root_dir() -> Path:
    """Return path to the root directory."""
    return TEST_DIR.parent


@pytest.fixture(scope="session")
def template() -> Template:
    """Default humanoid template."""
    return default_human_template()


@pytest.fixture(scope="session")
def camera() -> Camera:
    """Default camera."""
    return Camera.default()


@pytest.fixture(scope="session")
def small_settings() -> RenderSettings:
    """Render settings small enough for per-test renders and gradient checks."""
    return RenderSettings(width=16, height=16, samples_per_ray=16)
