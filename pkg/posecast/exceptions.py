"""Exceptions raised by posecast.

Each exception also derives from the closest builtin so callers that do not
know about posecast can still catch them (e.g. :class:`ValueError`).

"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .fitter import FitResult


class PosecastError(Exception):
    """Base class for all posecast errors."""

    message: str
    """Human readable description of the error."""

    def __init__(self, message: str) -> None:
        """Instantiate class.

        Args:
            message: Human readable description of the error.

        """
        self.message = message
        super().__init__(message)


class DimensionMismatch(PosecastError, ValueError):
    """Two inputs that must agree in shape do not."""

    def __init__(self, what: str, expected: Any, actual: Any) -> None:
        """Instantiate class.

        Args:
            what: Name of the mismatched quantity.
            expected: Expected dimension(s).
            actual: Actual dimension(s).

        """
        self.what = what
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what}: expected {expected}, got {actual}")


class InvalidGaussian(PosecastError, ValueError):
    """A Gaussian part violates its invariants."""


class InvalidTemplate(PosecastError, ValueError):
    """A template violates its invariants."""


class NonPositiveScale(PosecastError, ValueError):
    """A scale component is less than or equal to zero."""

    def __init__(self, scale: Any) -> None:
        """Instantiate class.

        Args:
            scale: The offending scale vector.

        """
        self.scale = scale
        super().__init__(f"scale components must be > 0, got {scale}")


class SingularTransform(PosecastError, ArithmeticError):
    """A linear map is (numerically) singular."""

    def __init__(self, determinant: float) -> None:
        """Instantiate class.

        Args:
            determinant: Determinant of the offending matrix.

        """
        self.determinant = determinant
        super().__init__(f"transform is singular: |det H| = {abs(determinant):.3e} <= 1e-12")


class NonFiniteGradient(PosecastError, FloatingPointError):
    """An analytic gradient contains NaN or infinity."""


class NonFiniteObjective(PosecastError, FloatingPointError):
    """An objective evaluated to NaN or infinity."""


class NonFiniteUpdate(PosecastError, FloatingPointError):
    """An optimizer step produced NaN or infinity."""

    partial: FitResult | None
    """Result of the fit up to the failing iteration, when raised from a fit."""

    def __init__(self, message: str, *, partial: FitResult | None = None) -> None:
        """Instantiate class.

        Args:
            message: Human readable description of the error.
            partial: Result of the fit up to the failing iteration.

        """
        self.partial = partial
        super().__init__(message)
