"""Test posecast.geometry._rotation."""

from __future__ import annotations

import math

import pytest
import torch

from posecast.exceptions import DimensionMismatch, NonPositiveScale
from posecast.geometry import DTYPE, compose_affine, geodesic_angle, rodrigues, skew


def test_skew() -> None:
    """Test skew."""
    v = torch.tensor([1.0, -2.0, 3.0], dtype=DTYPE)
    w = torch.tensor([0.5, 4.0, -1.5], dtype=DTYPE)
    assert torch.allclose(skew(v) @ w, torch.linalg.cross(v, w))
    assert torch.equal(skew(v), -skew(v).T)


class TestRodrigues:
    """Test rodrigues."""

    def test_zero(self) -> None:
        """Test zero rotation is the identity."""
        assert torch.equal(rodrigues([0.0, 0.0, 0.0]), torch.eye(3, dtype=DTYPE))

    def test_quarter_turn_z(self) -> None:
        """Test a quarter turn about z."""
        expected = torch.tensor([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]], dtype=DTYPE)
        assert torch.allclose(rodrigues([0.0, 0.0, math.pi / 2]), expected, atol=1e-15)

    def test_half_turn_x(self) -> None:
        """Test a half turn about x."""
        expected = torch.diag(torch.tensor([1.0, -1.0, -1.0], dtype=DTYPE))
        assert torch.allclose(rodrigues([math.pi, 0.0, 0.0]), expected, atol=1e-15)

    @pytest.mark.parametrize(
        "r", [[0.3, -0.2, 0.9], [2.5, 1.0, -0.4], [1e-9, 0.0, 0.0], [0.0, 3.14159, 0.0]]
    )
    def test_orthonormal(self, r: list[float]) -> None:
        """Test the result is a proper rotation."""
        rot = rodrigues(r)
        assert torch.allclose(rot.T @ rot, torch.eye(3, dtype=DTYPE), atol=1e-12)
        assert float(torch.linalg.det(rot)) == pytest.approx(1.0, abs=1e-12)

    def test_batched(self) -> None:
        """Test batched input matches per-vector calls."""
        r = torch.tensor([[0.1, 0.2, 0.3], [0.0, 0.0, 0.0], [-1.0, 0.5, 2.0]], dtype=DTYPE)
        batched = rodrigues(r)
        assert batched.shape == (3, 3, 3)
        for index in range(3):
            assert torch.allclose(batched[index], rodrigues(r[index]))

    def test_random_orthonormal(self) -> None:
        """Test a thousand random vectors give proper rotations."""
        r = 2.0 * torch.randn((1000, 3), generator=torch.Generator().manual_seed(8), dtype=DTYPE)
        rot = rodrigues(r)
        identity = torch.eye(3, dtype=DTYPE).expand(1000, 3, 3)
        assert torch.allclose(rot.transpose(-1, -2) @ rot, identity, rtol=0.0, atol=1e-12)
        assert torch.allclose(torch.linalg.det(rot), torch.ones(1000, dtype=DTYPE), rtol=0.0, atol=1e-12)

    def test_negation_transposes(self) -> None:
        """Test rotating by -r undoes rotating by r."""
        r = torch.randn((200, 3), generator=torch.Generator().manual_seed(9), dtype=DTYPE)
        assert torch.allclose(rodrigues(-r), rodrigues(r).transpose(-1, -2), rtol=0.0, atol=1e-14)

    def test_small_angle_continuous(self) -> None:
        """Test the series branch agrees with the closed form across the switch."""
        below = rodrigues([0.9e-8, 0.0, 0.0])
        above = rodrigues([1.1e-8, 0.0, 0.0])
        assert torch.allclose(below, above, atol=1e-15)

    def test_gradient_at_zero(self) -> None:
        """Test the gradient at the origin is finite and equals d[r]_x."""
        r = torch.zeros(3, dtype=DTYPE, requires_grad=True)
        rot = rodrigues(r)
        (grad,) = torch.autograd.grad(rot[1, 0], r)
        assert torch.isfinite(grad).all()
        assert torch.allclose(grad, torch.tensor([0.0, 0.0, 1.0], dtype=DTYPE))

    def test_wrong_shape(self) -> None:
        """Test a vector of the wrong length is rejected."""
        with pytest.raises(DimensionMismatch):
            rodrigues([1.0, 2.0])

    def test_non_finite(self) -> None:
        """Test non-finite components are rejected."""
        with pytest.raises(ValueError, match="finite"):
            rodrigues([math.nan, 0.0, 0.0])


class TestComposeAffine:
    """Test compose_affine."""

    def test_scale_only(self) -> None:
        """Test zero rotation gives a diagonal matrix."""
        h = compose_affine([0.0, 0.0, 0.0], [2.0, 3.0, 0.5])
        assert torch.equal(h, torch.diag(torch.tensor([2.0, 3.0, 0.5], dtype=DTYPE)))

    def test_columns_scaled(self) -> None:
        """Test H = R diag(s) scales the columns of R."""
        r = [0.4, -0.7, 0.2]
        s = torch.tensor([1.5, 0.5, 2.0], dtype=DTYPE)
        assert torch.allclose(compose_affine(r, s), rodrigues(r) @ torch.diag(s))

    @pytest.mark.parametrize("s", [[1.0, 0.0, 1.0], [1.0, 1.0, -0.5]])
    def test_non_positive_scale(self, s: list[float]) -> None:
        """Test a non-positive scale component raises."""
        with pytest.raises(NonPositiveScale):
            compose_affine([0.0, 0.0, 0.0], s)


def test_geodesic_angle() -> None:
    """Test geodesic_angle."""
    base = rodrigues([0.2, -0.1, 0.4])
    assert float(geodesic_angle(base, base)) == 0.0
    turned = base @ rodrigues([0.0, 0.0, 0.3])
    assert float(geodesic_angle(base, turned)) == pytest.approx(0.3, abs=1e-12)
    assert float(geodesic_angle(torch.eye(3, dtype=DTYPE), rodrigues([0.0, math.pi, 0.0]))) == pytest.approx(
        math.pi, abs=1e-12
    )
