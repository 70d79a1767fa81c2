"""Test posecast.autodiff._gradient."""

from __future__ import annotations

import math

import pytest
import torch

from posecast.autodiff import DEFAULT_EPS, ROUNDOFF_ULPS, GradientReport, finite_diff_check, gradient
from posecast.exceptions import NonFiniteGradient, NonFiniteObjective
from posecast.geometry import DTYPE


def _quadratic(p: torch.Tensor) -> torch.Tensor:
    weights = torch.arange(1, p.shape[0] + 1, dtype=DTYPE)
    return (weights * p * p).sum() + 3.0 * p[0] - p[-1]


def _smooth(p: torch.Tensor) -> torch.Tensor:
    return torch.sin(p).sum() * torch.exp(-0.5 * (p * p).sum())


class TestGradient:
    """Test gradient."""

    def test_stationary_point(self) -> None:
        """Test the squared norm at the origin."""
        assert gradient(lambda p: (p * p).sum(), torch.zeros(5)).tolist() == [0.0] * 5

    def test_constant(self) -> None:
        """Test an objective that ignores its input."""
        assert gradient(lambda _: torch.tensor(4.0), [1.0, 2.0]).tolist() == [0.0, 0.0]

    def test_quadratic(self) -> None:
        """Test an analytic gradient."""
        p = torch.tensor([1.0, -2.0, 0.5], dtype=DTYPE)
        assert gradient(_quadratic, p).tolist() == pytest.approx([2.0 + 3.0, -8.0, 3.0 - 1.0])

    def test_input_untouched(self) -> None:
        """Test the caller's tensor does not become part of a graph."""
        p = torch.ones(3, dtype=DTYPE)
        gradient(_quadratic, p)
        assert not p.requires_grad
        assert p.grad is None

    def test_linearity(self) -> None:
        """Test grad(aF + bG) = a grad(F) + b grad(G)."""
        generator = torch.Generator().manual_seed(2)
        for _ in range(20):
            p = torch.randn(7, generator=generator, dtype=DTYPE)
            a, b = torch.randn(2, generator=generator, dtype=DTYPE).tolist()
            combined = gradient(lambda x, a=a, b=b: a * _quadratic(x) + b * _smooth(x), p)
            separate = a * gradient(_quadratic, p) + b * gradient(_smooth, p)
            assert torch.allclose(combined, separate, rtol=0.0, atol=1e-10)

    def test_non_finite_objective(self) -> None:
        """Test a NaN objective is reported."""
        with pytest.raises(NonFiniteObjective):
            gradient(lambda p: torch.log(p).sum(), [-1.0, 1.0])

    def test_non_finite_gradient(self) -> None:
        """Test an infinite derivative is reported."""
        with pytest.raises(NonFiniteGradient, match="indices \\[0\\]"):
            gradient(lambda p: torch.sqrt(p).sum(), [0.0, 1.0])


class TestFiniteDiffCheck:
    """Test finite_diff_check."""

    def test_quadratic(self) -> None:
        """Test central differences are exact for a quadratic up to roundoff."""
        report = finite_diff_check(_quadratic, torch.tensor([0.3, -0.2, 0.5, 0.0], dtype=DTYPE))
        assert isinstance(report, GradientReport)
        assert report.eps == DEFAULT_EPS
        assert len(report.analytic) == len(report.numeric) == 4
        assert report.max_rel_err < 1e-9
        assert report.passed(1e-9)

    def test_smooth(self) -> None:
        """Test a smooth non-polynomial objective."""
        report = finite_diff_check(_smooth, torch.tensor([0.2, -0.4, 0.9], dtype=DTYPE))
        assert report.max_rel_err < 1e-8

    def test_kink_not_masked(self) -> None:
        """Test a kink at the probe point shows up as a large error."""
        report = finite_diff_check(lambda p: torch.where(p > 0, p, torch.zeros_like(p)).sum(), [0.0, 1.0])
        assert report.numeric[0] == pytest.approx(0.5)
        assert report.analytic[0] == 0.0
        assert report.max_rel_err == pytest.approx(1.0)
        assert report.worst_index == 0
        assert not report.passed(1e-3)

    def test_wrong_analytic(self) -> None:
        """Test a supplied analytic gradient is checked as given."""
        p = torch.tensor([1.0, 2.0], dtype=DTYPE)
        report = finite_diff_check(_quadratic, p, analytic=gradient(_quadratic, p) + torch.tensor([0.0, 1.0]))
        assert report.worst_index == 1
        assert report.max_abs_err == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("eps", [1e-9, 0.1, 0.0])
    def test_eps_out_of_range(self, eps: float) -> None:
        """Test eps must lie in [1e-8, 1e-2]."""
        with pytest.raises(ValueError, match="eps"):
            finite_diff_check(_quadratic, [1.0], eps)

    def test_non_finite_probe(self) -> None:
        """Test a probe point outside the domain is reported."""
        with pytest.raises(NonFiniteObjective):
            finite_diff_check(lambda p: torch.log(p).sum(), [1e-6], eps=1e-5)

    def test_rounding_of_large_objective(self) -> None:
        """Test rounding of a large objective value is not counted as a gradient error."""
        report = finite_diff_check(lambda p: 16.0 + 1e-7 * p.sum(), [0.3])
        assert report.resolution == pytest.approx(ROUNDOFF_ULPS * math.ulp(16.0) / DEFAULT_EPS)
        assert report.max_rel_err < 1e-4
        assert report.max_abs_err <= report.resolution

    def test_error_above_resolution(self) -> None:
        """Test a discrepancy above the difference resolution is still reported."""
        report = finite_diff_check(lambda p: 16.0 + 1e-7 * p.sum(), [0.3], analytic=[1.1e-6])
        assert report.max_abs_err > 100 * report.resolution
        assert report.max_rel_err > 0.5
        assert not report.passed(1e-4)
