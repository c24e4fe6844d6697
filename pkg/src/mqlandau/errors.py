"""Exception types shared across the package.

Validation problems derive from ``ValueError``; numerical failures derive from
``ArithmeticError`` so the CLI can map them to distinct exit codes.
"""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class BracketError(ValueError):
    """A root-finding interval does not hold the requested number of sign changes."""


class DegenerateConstraintError(ValueError):
    """A coupling constant is zero so the constrained frequency would vanish."""


class TruncationError(ValueError):
    """Parameters do not turn the Heun series into a polynomial."""


class NonConvergenceError(ArithmeticError):
    """An iterative evaluation stopped before reaching its tolerance."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class GridTooCoarseError(ArithmeticError):
    """Finite-difference eigenvalues move too much when the grid is halved."""
