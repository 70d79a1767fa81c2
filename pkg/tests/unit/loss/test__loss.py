"""Test posecast.loss._loss."""

from __future__ import annotations

import math
import warnings

import pytest
import torch

from posecast.exceptions import DimensionMismatch
from posecast.geometry import DTYPE
from posecast.loss import (
    ALPHA_DECAY_ITERATIONS,
    LossBreakdown,
    alpha_schedule,
    boundary_loss,
    recon_loss,
    rotation_reg,
    safe_norm,
    total_loss,
)
from posecast.renderer import ImageBuffer
from posecast.template import PoseParams


def _image(value: float, height: int = 2, width: int = 2) -> ImageBuffer:
    return ImageBuffer.from_rgb(torch.full((height, width, 3), value, dtype=DTYPE))


class TestReconLoss:
    """Test recon_loss."""

    def test_identical(self) -> None:
        """Test identical images have zero loss."""
        assert float(recon_loss(_image(0.3), _image(0.3))) == 0.0

    def test_black_white(self) -> None:
        """Test black against white sums three channels per pixel."""
        assert float(recon_loss(_image(0.0), _image(1.0))) == 3.0

    def test_single_pixel(self) -> None:
        """Test one differing pixel is averaged over the image."""
        target = _image(0.0)
        rendered = torch.zeros((2, 2, 3), dtype=DTYPE)
        rendered[0, 1] = torch.tensor([0.5, 0.0, 0.0])
        assert float(recon_loss(ImageBuffer.from_rgb(rendered), target)) == pytest.approx(0.0625)

    def test_alpha_ignored(self) -> None:
        """Test alpha does not enter the loss."""
        rendered = ImageBuffer(rgb=torch.zeros((2, 2, 3), dtype=DTYPE), alpha=torch.zeros((2, 2), dtype=DTYPE))
        assert float(recon_loss(rendered, _image(0.0))) == 0.0

    def test_size_mismatch(self) -> None:
        """Test images of different sizes are rejected."""
        with pytest.raises(DimensionMismatch):
            recon_loss(_image(0.0, 2, 2), _image(0.0, 3, 2))


class TestBoundaryLoss:
    """Test boundary_loss."""

    def test_inside(self) -> None:
        """Test anchors inside the image cost nothing."""
        assert float(boundary_loss([[0.0, 0.0], [0.9, -0.99], [1.0, -1.0]])) == 0.0

    def test_one_outside(self) -> None:
        """Test a single coordinate beyond the border."""
        assert float(boundary_loss([[1.5, 0.0]])) == 1.5

    def test_both_axes(self) -> None:
        """Test both coordinates of one anchor are penalized."""
        assert float(boundary_loss([[-2.0, 3.0], [0.5, 0.5]])) == 5.0

    def test_empty(self) -> None:
        """Test no visible anchors."""
        assert float(boundary_loss(torch.zeros((0, 2), dtype=DTYPE))) == 0.0

    def test_gradient(self) -> None:
        """Test the hinge slope is 0 inside and the sign of the coordinate outside."""
        anchors = torch.tensor([[0.5, -0.2], [-1.5, 0.3], [0.1, 2.0]], dtype=DTYPE, requires_grad=True)
        (grad,) = torch.autograd.grad(boundary_loss(anchors), anchors)
        assert grad.tolist() == [[0.0, 0.0], [-1.0, 0.0], [0.0, 1.0]]


class TestRotationReg:
    """Test rotation_reg."""

    def test_identity(self) -> None:
        """Test the rest pose is not penalized."""
        assert float(rotation_reg(PoseParams.identity(10))) == 0.0

    def test_sum_of_norms(self) -> None:
        """Test the sum of rotation-vector lengths."""
        pose = PoseParams(rotations=[[3.0, 4.0, 0.0], [0.0, 0.0, -2.0]], scales=torch.ones((2, 3)))
        assert float(rotation_reg(pose)) == 7.0

    def test_gradient_at_zero(self) -> None:
        """Test a zero rotation gets a zero subgradient."""
        rotations = torch.tensor([[0.0, 0.0, 0.0], [0.0, 3.0, 4.0]], dtype=DTYPE, requires_grad=True)
        pose = PoseParams(rotations=rotations, scales=torch.ones((2, 3), dtype=DTYPE))
        (grad,) = torch.autograd.grad(rotation_reg(pose), rotations)
        assert torch.allclose(grad, torch.tensor([[0.0, 0.0, 0.0], [0.0, 0.6, 0.8]], dtype=DTYPE))

    def test_safe_norm(self) -> None:
        """Test safe_norm."""
        assert safe_norm(torch.tensor([[1.0, 2.0, 2.0], [0.0, 0.0, 0.0]], dtype=DTYPE)).tolist() == [3.0, 0.0]


class TestAlphaSchedule:
    """Test alpha_schedule."""

    @pytest.mark.parametrize(
        ("iteration", "expected"), [(0, 1.0), (250, 0.5), (499, 0.002), (500, 0.0), (10_000, 0.0)]
    )
    def test_values(self, iteration: int, expected: float) -> None:
        """Test the linear decay."""
        assert alpha_schedule(iteration) == pytest.approx(expected)

    def test_monotonic(self) -> None:
        """Test the weight never increases and stays in [0, 1]."""
        weights = [alpha_schedule(i) for i in range(2 * ALPHA_DECAY_ITERATIONS)]
        assert all(0.0 <= w <= 1.0 for w in weights)
        assert all(a >= b for a, b in zip(weights, weights[1:]))

    def test_negative(self) -> None:
        """Test a negative iteration is rejected."""
        with pytest.raises(ValueError, match="iteration"):
            alpha_schedule(-1)


class TestTotalLoss:
    """Test total_loss."""

    def test_perfect(self) -> None:
        """Test every term vanishes for a perfect rest-pose fit."""
        breakdown = total_loss(_image(0.4), _image(0.4), [[0.1, 0.2]], PoseParams.identity(3), 0)
        assert float(breakdown.total) == 0.0

    def test_combination(self) -> None:
        """Test total = recon + boundary + alpha * rot_reg."""
        pose = PoseParams(rotations=[[0.0, 0.0, 2.0]], scales=[[1.0, 1.0, 1.0]])
        breakdown = total_loss(_image(0.0), _image(0.5), [[1.25, 0.0]], pose, 250)
        assert isinstance(breakdown, LossBreakdown)
        assert float(breakdown.recon) == 0.75
        assert float(breakdown.boundary) == 1.25
        assert float(breakdown.rot_reg) == 2.0
        assert breakdown.alpha == 0.5
        assert float(breakdown.total) == 3.0
        assert breakdown.to_record() == {"recon": 0.75, "boundary": 1.25, "rot_reg": 2.0, "alpha": 0.5, "total": 3.0}

    def test_regularizer_switched_off(self) -> None:
        """Test the rotation term disappears after the decay window."""
        pose = PoseParams(rotations=[[0.0, math.pi, 0.0]], scales=[[1.0, 1.0, 1.0]])
        breakdown = total_loss(_image(0.0), _image(0.0), [[0.0, 0.0]], pose, ALPHA_DECAY_ITERATIONS)
        assert float(breakdown.rot_reg) == pytest.approx(math.pi)
        assert float(breakdown.total) == 0.0

    def test_record_from_graph(self) -> None:
        """Test terms still attached to a graph convert to floats without warnings."""
        rotations = torch.tensor([[0.0, 0.0, 2.0]], dtype=DTYPE, requires_grad=True)
        pose = PoseParams(rotations=rotations, scales=[[1.0, 1.0, 1.0]])
        breakdown = total_loss(_image(0.0), _image(0.5), [[1.25, 0.0]], pose, 250)
        assert breakdown.total.requires_grad
        with warnings.catch_warnings():
            warnings.filterwarnings("error", message=".*requires_grad.*")
            record = breakdown.to_record()
        assert record["total"] == 3.0
