"""Field configuration producing the uniform effective magnetic field.

A quadrupole tensor with the single nonzero pair M_rz = M_zr = M sits in the
radial electric field E = (lambda rho^2 / 2) rho_hat. Their cross product acts
as a vector potential lambda*M*rho along phi_hat, which is what enters the
Hamiltonian. The nominal field magnitude is quoted as lambda*M; note that the
curl of lambda*M*rho phi_hat is 2*lambda*M, the value ``curl_z`` returns.
Units are natural (hbar = c = 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mqlandau.errors import DomainError


@dataclass(frozen=True)
class SystemParams:
    """Mass ``m``, quadrupole moment ``M`` and charge-density parameter ``lam``."""

    m: float
    M: float = 1.0
    lam: float = 0.0

    def __post_init__(self):
        if not self.m > 0:
            raise DomainError(f"mass m must be > 0, got {self.m}")
        if not self.M > 0:
            raise DomainError(f"quadrupole moment M must be > 0, got {self.M}")
        if not self.lam >= 0:
            raise DomainError(f"charge-density parameter lambda must be >= 0, got {self.lam}")

    @classmethod
    def from_field(cls, m: float, field: float) -> "SystemParams":
        """Build parameters from the product M*lambda alone (M fixed to 1)."""
        return cls(m=m, M=1.0, lam=field)

    @property
    def field(self) -> float:
        """M*lambda, the magnitude of the effective magnetic field."""
        return self.M * self.lam

    @property
    def frequency(self) -> float:
        """Effective angular frequency M*lambda/m."""
        return self.M * self.lam / self.m


def electric_field(params: SystemParams, rho):
    """Radial electric field magnitude lambda*rho^2/2."""
    rho = _check_rho(rho)
    return 0.5 * params.lam * rho**2


def effective_vector_potential(params: SystemParams, rho):
    """Azimuthal magnitude of M x E, equal to lambda*M*rho."""
    rho = _check_rho(rho)
    return params.lam * params.M * rho


def effective_magnetic_field(params: SystemParams) -> float:
    """Axial magnitude of the effective field; it does not depend on rho."""
    return params.lam * params.M


def curl_z(params: SystemParams, rho: float, h: float = 1e-4) -> float:
    """(1/rho) d(rho A_phi)/drho by central differences.

    For A_phi = lambda*M*rho this is 2*lambda*M at every rho > 0.
    """
    if not rho > h:
        raise DomainError(f"rho must exceed the step h={h}, got {rho}")
    hi = (rho + h) * effective_vector_potential(params, rho + h)
    lo = (rho - h) * effective_vector_potential(params, rho - h)
    return float((hi - lo) / (2 * h) / rho)


def _check_rho(rho):
    arr = np.asarray(rho, dtype=float)
    if np.any(arr < 0):
        raise DomainError(f"radial coordinate rho must be >= 0, got {rho}")
    return arr if arr.ndim else float(arr)
