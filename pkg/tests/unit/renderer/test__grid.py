"""Test posecast.renderer._grid."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
import torch

from posecast.geometry import GaussianPart
from posecast.renderer import occupancy_grid
from posecast.template import PoseParams, TransformedTemplate, apply_pose

if TYPE_CHECKING:
    from posecast.template import Template


def test_occupancy_grid(template: Template) -> None:
    """Test the grid of the rest pose."""
    grid = occupancy_grid(apply_pose(template, PoseParams.identity(10)), resolution=24)
    assert grid.values.shape == (24, 24, 24)
    assert float(grid.values.min()) >= 0.0
    assert float(grid.values.max()) <= 1.0
    assert not grid.values.requires_grad
    lower_x, lower_y, _ = grid.lower
    upper_x, upper_y, _ = grid.upper
    assert lower_x == pytest.approx(-upper_x)
    assert lower_y < -1.0 < 0.9 < upper_y


def test_occupancy_grid_single_part() -> None:
    """Test the box spans three standard deviations and the corners are empty."""
    covariance = torch.diag(torch.tensor([0.25, 1.0, 4.0]))
    part = GaussianPart(mean=[1.0, 2.0, 3.0], covariance=covariance, base_colour=[1, 1, 1])
    grid = occupancy_grid(TransformedTemplate(parts=(part,)), resolution=3)
    assert grid.lower == pytest.approx((-0.5, -1.0, -3.0))
    assert grid.upper == pytest.approx((2.5, 5.0, 9.0))
    assert float(grid.values[1, 1, 1]) == 1.0
    assert float(grid.values[0, 0, 0]) < 1e-5


def test_occupancy_grid_resolution() -> None:
    """Test a resolution below two is rejected."""
    part = GaussianPart(mean=[0, 0, 0], covariance=torch.eye(3), base_colour=[0, 0, 0])
    with pytest.raises(ValueError, match="resolution"):
        occupancy_grid(TransformedTemplate(parts=(part,)), resolution=1)


def test_occupancy_grid_empty() -> None:
    """Test a template without parts is rejected."""
    with pytest.raises(ValueError, match="without parts"):
        occupancy_grid(TransformedTemplate(parts=()))
