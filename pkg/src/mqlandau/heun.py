"""Biconfluent Heun series for the confined Landau-type radial problem.

With r = sqrt(M lambda) rho and R(r) = exp(-r^2/2 - theta r/2) r^|l| H(r), the
radial equation becomes a biconfluent Heun equation for H. Its Frobenius
coefficients obey a three-term recurrence in which the Coulomb coupling ``nu``
and the linear coupling ``theta`` enter side by side; either may be zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial as P

from mqlandau.errors import DomainError, NonConvergenceError

#: Relative size of a_{n+1} (against max |a_k|, k <= n) that counts as zero.
TRUNCATION_RTOL = 1e-12


@dataclass(frozen=True)
class HeunParams:
    """Dimensionless parameters of the recurrence.

    abs2l: 2|l|; theta: 2 m eta / (M lambda)^(3/2); nu: 2 m alpha / sqrt(M lambda);
    beta: (2 m E + 2 M lambda l) / (M lambda).
    """

    abs2l: int
    theta: float = 0.0
    nu: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if self.abs2l < 0 or int(self.abs2l) != self.abs2l:
            raise DomainError(f"abs2l must be a nonnegative integer, got {self.abs2l}")

    @property
    def abs_l(self) -> int:
        return self.abs2l // 2

    @classmethod
    def from_physical(cls, l: int, m: float, field: float, energy: float = 0.0,
                      alpha: float = 0.0, eta: float = 0.0) -> "HeunParams":
        """Map physical quantities (field = M*lambda) onto the recurrence parameters."""
        if not field > 0:
            raise DomainError(f"M*lambda must be > 0 to rescale the radius, got {field}")
        return cls(
            abs2l=2 * abs(int(l)),
            theta=2 * m * eta / field**1.5,
            nu=2 * m * alpha / math.sqrt(field),
            beta=(2 * m * energy + 2 * field * l) / field,
        )

    @classmethod
    def on_energy_shell(cls, n: int, l: int, theta: float = 0.0, nu: float = 0.0) -> "HeunParams":
        """Parameters with beta fixed by the degree-n condition 4 beta + theta^2 - 8 - 8|l| = 8n."""
        L = abs(int(l))
        return cls(abs2l=2 * L, theta=theta, nu=nu, beta=2.0 * (n + 1 + L) - theta**2 / 4)


@dataclass
class HeunSeries:
    params: HeunParams
    coefficients: np.ndarray
    truncated_at: Optional[int] = None
    _poly: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.truncated_at is None:
            self._poly = self.coefficients
        else:
            self._poly = self.coefficients[: self.truncated_at + 1]

    @property
    def degree(self) -> Optional[int]:
        return self.truncated_at


def recurrence(abs2l, theta, nu, beta, kmax: int) -> np.ndarray:
    """Coefficients a_0..a_kmax; theta, nu and beta may be broadcastable arrays.

    Returns an array whose first axis runs over k.
    """
    theta, nu, beta = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (theta, nu, beta)))
    a = np.zeros((kmax + 1,) + theta.shape)
    a[0] = 1.0
    if kmax >= 1:
        a[1] = theta / 2 + nu / (1 + abs2l)
    for k in range(kmax - 1):
        den = (k + 2) * (k + 2 + abs2l)
        a[k + 2] = ((theta * (2 * k + 3 + abs2l) + 2 * nu) / (2 * den) * a[k + 1]
                    - (4 * beta + theta**2 - 8 - 4 * abs2l - 8 * k) / (4 * den) * a[k])
    return a


def heun_coefficients(params: HeunParams, kmax: int) -> HeunSeries:
    """Frobenius coefficients of H(r) up to order ``kmax``, with truncation detection."""
    if kmax < 2:
        raise DomainError(f"kmax must be >= 2, got {kmax}")
    a = recurrence(params.abs2l, params.theta, params.nu, params.beta, kmax)
    return HeunSeries(params, a, _detect_truncation(a))


def _detect_truncation(a: np.ndarray) -> Optional[int]:
    mag = np.abs(a)
    head = np.maximum.accumulate(mag)
    # tail[k] = max |a_j| for j >= k
    tail = np.maximum.accumulate(mag[::-1])[::-1]
    for n in range(len(a) - 1):
        if tail[n + 1] <= TRUNCATION_RTOL * max(1.0, head[n]):
            return n
    return None


def heun_eval(series: HeunSeries, r, deriv: int = 0):
    """Value (or ``deriv``-th derivative) of H at r >= 0.

    Truncated series are evaluated as exact polynomials. Otherwise the full
    coefficient list is summed and the last terms must be negligible.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise DomainError("heun_eval needs r >= 0")
    c = series._poly
    if series.truncated_at is None:
        rr = np.atleast_1d(r_arr).ravel()
        terms = np.abs(c[:, None] * rr[None, :] ** np.arange(len(c))[:, None])
        if np.any(terms[-3:].max(axis=0) > 1e-12 * terms.max(axis=0)):
            raise NonConvergenceError(
                f"Heun partial sums have not stabilized at r={float(rr.max())} with {len(c)} terms"
            )
    if deriv:
        c = P.polyder(c, deriv) if len(c) > deriv else np.zeros(1)
    out = P.polyval(r_arr, c)
    return out if np.ndim(out) else float(out)


def truncation_conditions(n: int, params: HeunParams) -> tuple[float, float]:
    """Residuals (c1, c2) that both vanish when H is a polynomial of degree n.

    c1 = 4 beta + theta^2 - 8 - 8|l| - 8n and c2 = a_{n+1}.
    """
    if n < 1:
        raise DomainError(f"degree n must be >= 1, got {n}")
    p = params
    c1 = 4 * p.beta + p.theta**2 - 8 - 4 * p.abs2l - 8 * n
    a = recurrence(p.abs2l, p.theta, p.nu, p.beta, n + 1)
    return float(c1), float(a[n + 1])


def radial_function(series: HeunSeries, r, deriv: int = 0):
    """R(r) = exp(-r^2/2 - theta r/2) r^|l| H(r) and its first two derivatives.

    Returns a tuple (R, R', R'') when ``deriv`` is 2, (R, R') for 1, else R.
    """
    p = series.params
    L = p.abs_l
    r = np.asarray(r, dtype=float)
    env = np.exp(-r**2 / 2 - p.theta * r / 2) * r**L
    H = heun_eval(series, r)
    if deriv == 0:
        return env * H
    H1 = heun_eval(series, r, 1)
    # g = log of the envelope; R = e^g H
    g1 = -r - p.theta / 2 + L / r
    R1 = env * (H1 + g1 * H)
    if deriv == 1:
        return env * H, R1
    H2 = heun_eval(series, r, 2)
    g2 = -1 - L / r**2
    R2 = env * (H2 + 2 * g1 * H1 + (g2 + g1**2) * H)
    return env * H, R1, R2


def radial_ode_residual(series: HeunSeries, r):
    """R'' + R'/r - l^2/r^2 R - r^2 R - theta r R - nu/r R + beta R at r > 0."""
    p = series.params
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("radial ODE residual needs r > 0")
    R, R1, R2 = radial_function(series, r, deriv=2)
    L = p.abs_l
    return R2 + R1 / r - (L**2 / r**2 + r**2 + p.theta * r + p.nu / r - p.beta) * R


def heun_ode_residual(series: HeunSeries, r):
    """Residual of the Heun equation for H itself, with analytic polynomial derivatives."""
    p = series.params
    r = np.asarray(r, dtype=float)
    L2 = p.abs2l
    H, H1, H2 = (heun_eval(series, r, d) for d in (0, 1, 2))
    return (H2 + ((L2 + 1) / r - p.theta - 2 * r) * H1
            + (p.beta + p.theta**2 / 4 - 2 - L2 - (p.theta * (L2 + 1) + 2 * p.nu) / (2 * r)) * H)
