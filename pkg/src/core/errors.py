"""Exception hierarchy shared by every SteerLab module.

Argument and state problems derive from ValueError, numerical breakdowns
from ArithmeticError, so the CLI can map each family to its exit code.
"""
from typing import Optional


class SteerlabError(Exception):
    """Base class for all SteerLab errors."""


class InvalidArgumentError(SteerlabError, ValueError):
    """A parameter is outside its documented range."""


class NotPSDError(InvalidArgumentError):
    """A matrix that must be positive semidefinite has a negative eigenvalue."""

    def __init__(self, min_eigenvalue: float, tol: float):
        self.min_eigenvalue = min_eigenvalue
        self.tol = tol
        super().__init__(
            f"Matrix is not PSD: minimum eigenvalue {min_eigenvalue:.3e} below -{tol:.1e}"
        )


class NotXStateError(InvalidArgumentError):
    """A density matrix has weight outside the X pattern."""

    def __init__(self, index: tuple, magnitude: float, tol: float):
        self.index = index
        self.magnitude = magnitude
        self.tol = tol
        super().__init__(
            f"Not an X-state: entry {index} has magnitude {magnitude:.3e} (tol {tol:.1e})"
        )


class RegimeError(InvalidArgumentError):
    """Reservoir parameters fall outside the requested dynamical regime."""


class InvalidStateError(InvalidArgumentError):
    """Bloch parameters do not describe a physical state."""


class NumericFailureError(SteerlabError, ArithmeticError):
    """An iterative or closed-form computation broke down."""


class DegenerateOutcomeError(NumericFailureError):
    """A post-selected measurement branch has (numerically) zero probability."""

    def __init__(self, probability: float, floor: float):
        self.probability = probability
        super().__init__(
            f"Degenerate measurement outcome: success probability {probability:.3e} < {floor:.0e}"
        )


class SingularConfigurationError(NumericFailureError):
    """A closed-form denominator vanishes for the given parameters."""


class ApproximationDomainError(NumericFailureError):
    """An approximate optimal-reversal formula is evaluated outside its domain."""

    def __init__(self, message: str, radicand: Optional[float] = None):
        self.radicand = radicand
        super().__init__(message)
