"""Bound-state spectra of a magnetic-quadrupole Landau-type system under radial confinement."""

from mqlandau.errors import (
    BracketError,
    DegenerateConstraintError,
    DomainError,
    GridTooCoarseError,
    NonConvergenceError,
    TruncationError,
)
from mqlandau.fields import SystemParams, effective_magnetic_field, effective_vector_potential

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "DegenerateConstraintError",
    "DomainError",
    "GridTooCoarseError",
    "NonConvergenceError",
    "SystemParams",
    "TruncationError",
    "effective_magnetic_field",
    "effective_vector_potential",
]
