"""Energy levels and allowed frequencies for each confinement scenario.

Frequencies here are the effective frequency M*lambda/m. For the Coulomb,
linear and Coulomb+linear potentials a bound state of radial degree n exists
only at particular frequencies, found by requiring a_{n+1} = 0 in the Heun
series once beta is fixed by the degree-n energy condition.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from numpy.polynomial import legendre

from mqlandau.errors import (
    BracketError,
    DegenerateConstraintError,
    DomainError,
    TruncationError,
)
from mqlandau.fields import SystemParams
from mqlandau.heun import HeunParams, heun_coefficients, recurrence, truncation_conditions
from mqlandau.specfun import hyp0f1, kummer_m

log = logging.getLogger(__name__)


# --------------------------------------------------------------------------
# Confinement variants


def _positive(name, value):
    if not value > 0:
        raise DomainError(f"{name} must be > 0, got {value}")


@dataclass(frozen=True)
class NoConfinement:
    alpha = 0.0
    eta = 0.0
    name = "none"


@dataclass(frozen=True)
class HardWall:
    rho0: float
    alpha = 0.0
    eta = 0.0
    name = "hardwall"

    def __post_init__(self):
        _positive("rho0", self.rho0)


@dataclass(frozen=True)
class Coulomb:
    alpha: float
    eta = 0.0
    name = "coulomb"

    def __post_init__(self):
        _positive("alpha", self.alpha)


@dataclass(frozen=True)
class Linear:
    eta: float
    alpha = 0.0
    name = "linear"

    def __post_init__(self):
        _positive("eta", self.eta)


@dataclass(frozen=True)
class CoulombLinear:
    alpha: float
    eta: float
    name = "mixed"

    def __post_init__(self):
        _positive("alpha", self.alpha)
        _positive("eta", self.eta)


ConfinementSpec = Union[NoConfinement, HardWall, Coulomb, Linear, CoulombLinear]
CONSTRAINED = (Coulomb, Linear, CoulombLinear)


class Provenance(str, enum.Enum):
    CLOSED_FORM = "closed-form"
    TRUNCATION = "truncation-constrained"
    ORACLE = "numerical-oracle"


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    l: int
    energy: float
    frequency: float
    provenance: Provenance


# --------------------------------------------------------------------------
# Unconfined Landau-type levels and the hard wall


def landau_energy(n: int, l: int, params: SystemParams) -> EnergyLevel:
    """Unconfined level w (2n + |l| - l + 1), n = 0, 1, ...; w = M lambda / m."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    w = params.frequency
    return EnergyLevel(n, l, w * (2 * n + abs(l) - l + 1), w, Provenance.CLOSED_FORM)


def hardwall_energy_asymptotic(n: int, l: int, params: SystemParams, rho0: float) -> EnergyLevel:
    """Energy from the zeros of the cosine in the large-|a| Kummer form."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    _positive("rho0", rho0)
    k = n * math.pi + abs(l) * math.pi / 2 + 3 * math.pi / 4
    energy = k**2 / (2 * params.m * rho0**2) + params.field * l / params.m
    return EnergyLevel(n, l, energy, params.frequency, Provenance.CLOSED_FORM)


def hardwall_boundary(energy: float, l: int, params: SystemParams, rho0: float) -> float:
    """R at the wall, up to the positive prefactor: M(a(E), |l|+1, M lambda rho0^2).

    At M lambda = 0 the Kummer function degenerates to 0F1(; |l|+1; -m E rho0^2 / 2),
    whose zeros are those of the Bessel function J_|l|.
    """
    m, F, L = params.m, params.field, abs(l)
    if F == 0:
        return hyp0f1(L + 1, -m * energy * rho0**2 / 2)
    a = (L + 1) / 2 - m * energy / (2 * F) + l / 2
    return kummer_m(a, L + 1, F * rho0**2)


def hardwall_energy_exact(n: int, l: int, params: SystemParams, rho0: float,
                          bracket: Optional[Sequence[float]] = None,
                          rtol: float = 1e-13) -> EnergyLevel:
    """(n+1)-th energy at which the regular solution vanishes at rho0.

    The search runs over the wall phase s = rho0 sqrt(2 m E - 2 M lambda l), on
    which consecutive roots are roughly pi apart. ``bracket`` is an energy
    interval; by default one is built that holds at least n+1 roots.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    _positive("rho0", rho0)
    m, F = params.m, params.field

    def energy_of(s):
        return (s**2 / rho0**2 + 2 * F * l) / (2 * m)

    def phase_of(E):
        return rho0 * math.sqrt(max(2 * m * E - 2 * F * l, 0.0))

    if bracket is None:
        s_lo = 0.0
        s_hi = (n + 3 + abs(l) / 2) * math.pi + F * rho0**2
    else:
        e_lo, e_hi = sorted(bracket)
        s_lo, s_hi = phase_of(e_lo), phase_of(e_hi)

    f = lambda s: hardwall_boundary(energy_of(s), l, params, rho0)
    grid = np.linspace(s_lo, s_hi, max(400, int(40 * (s_hi - s_lo))) + 1)
    vals = [f(s) for s in grid]
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            roots.append(grid[i])
        elif vals[i] * vals[i + 1] < 0:
            roots.append(_bisect(f, grid[i], grid[i + 1], vals[i], rtol=rtol / 2))
        if len(roots) > n:
            break
    if len(roots) <= n:
        raise BracketError(
            f"energy bracket {energy_of(s_lo):.6g}..{energy_of(s_hi):.6g} holds {len(roots)} "
            f"sign change(s) of the wall function, need {n + 1}"
        )
    return EnergyLevel(n, l, energy_of(roots[n]), params.frequency, Provenance.CLOSED_FORM)


def _bisect(f, lo, hi, flo=None, rtol=1e-14, maxiter=200):
    flo = f(lo) if flo is None else flo
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi) or hi - lo <= rtol * abs(mid):
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


# --------------------------------------------------------------------------
# Ground-state frequencies in closed form


def coulomb_frequency_ground(l: int, m: float, alpha: float) -> float:
    """Frequency 2 m alpha^2 / (1 + 2|l|) at which the n = 1 Coulomb series truncates."""
    _positive("m", m)
    if alpha == 0:
        raise DegenerateConstraintError("alpha = 0 gives a vanishing frequency (M*lambda must be > 0)")
    _positive("alpha", alpha)
    return 2 * m * alpha**2 / (1 + 2 * abs(l))


def linear_frequency_ground(l: int, m: float, eta: float) -> float:
    """Frequency [eta^2 (2|l| + 3) / (2m)]^(1/3) for the n = 1 linear case."""
    _positive("m", m)
    if eta == 0:
        raise DegenerateConstraintError("eta = 0 gives a vanishing frequency (M*lambda must be > 0)")
    _positive("eta", eta)
    return (eta**2 * (2 * abs(l) + 3) / (2 * m)) ** (1 / 3)


def ground_cubic(l: int, m: float, alpha: float, eta: float, corrected: bool = True):
    """Coefficients (1, c2, c1, c0) of the n = 1 frequency cubic, highest power first.

    ``corrected=False`` drops the alpha*eta factor from the linear coefficient,
    reproducing the form x^3 - c x^2 - 4(1+|l|)/(1+2|l|) x - d as usually printed.
    That form is dimensionally inconsistent and only agrees with a_2 = 0 when
    alpha*eta = 1.
    """
    L = abs(l)
    c2 = -2 * m * alpha**2 / (1 + 2 * L)
    c1 = -4 * (1 + L) / (1 + 2 * L) * (alpha * eta if corrected else 1.0)
    c0 = -(3 + 2 * L) * eta**2 / (2 * m)
    return (1.0, c2, c1, c0)


def positive_cubic_roots(coeffs) -> list[float]:
    """Positive real roots of x^3 + c2 x^2 + c1 x + c0 (monic), closed form then polished."""
    _, c2, c1, c0 = (float(c) / float(coeffs[0]) for c in coeffs)
    p = c1 - c2**2 / 3
    q = 2 * c2**3 / 27 - c2 * c1 / 3 + c0
    shift = -c2 / 3
    disc = (q / 2) ** 2 + (p / 3) ** 3
    if disc > 0:
        s = math.sqrt(disc)
        t = math.copysign(abs(-q / 2 + s) ** (1 / 3), -q / 2 + s) + math.copysign(abs(-q / 2 - s) ** (1 / 3), -q / 2 - s)
        cands = [t + shift]
    elif p == 0:
        cands = [shift]
    else:
        rad = 2 * math.sqrt(-p / 3)
        arg = max(-1.0, min(1.0, 3 * q / (p * rad)))
        phi = math.acos(arg) / 3
        cands = [rad * math.cos(phi - 2 * math.pi * k / 3) + shift for k in range(3)]

    poly = lambda x: ((x + c2) * x + c1) * x + c0
    dpoly = lambda x: (3 * x + 2 * c2) * x + c1
    bound = 1 + max(abs(c2), abs(c1), abs(c0))
    roots = []
    for x in cands:
        if not x > 0:
            continue
        for _ in range(3):
            d = dpoly(x)
            if d == 0:
                break
            step = poly(x) / d
            x -= step
            if abs(step) <= 1e-16 * abs(x):
                break
        if x > 0:
            roots.append(x)
    if not roots and poly(0.0) < 0 < poly(bound):
        roots.append(_bisect(poly, 0.0, bound, rtol=1e-16))
    roots = sorted(roots)
    return [r for i, r in enumerate(roots) if i == 0 or r - roots[i - 1] > 1e-12 * r]


def mixed_frequency_ground(l: int, m: float, alpha: float, eta: float, corrected: bool = True) -> float:
    """Unique positive root of the n = 1 Coulomb+linear frequency cubic."""
    _positive("m", m)
    if alpha < 0 or eta < 0 or alpha == eta == 0:
        raise DomainError(f"need alpha, eta >= 0 and not both zero, got alpha={alpha}, eta={eta}")
    roots = positive_cubic_roots(ground_cubic(l, m, alpha, eta, corrected))
    if len(roots) != 1:
        raise DomainError(f"expected one positive root of the frequency cubic, found {roots}")
    return roots[0]


# --------------------------------------------------------------------------
# Constrained energies and the general frequency condition


def constrained_energy(scenario: ConfinementSpec, n: int, l: int, m: float, frequency: float) -> EnergyLevel:
    """E = w (n + |l| - l + 1) - eta^2 / (2 m w^2) at frequency w."""
    _positive("frequency", frequency)
    w = frequency
    energy = w * (n + abs(l) - l + 1)
    if scenario.eta:
        energy -= scenario.eta**2 / (2 * m * w**2)
    return EnergyLevel(n, l, energy, w, Provenance.TRUNCATION)


def heun_params_at(scenario: ConfinementSpec, n: int, l: int, m: float, frequency) -> HeunParams:
    """Recurrence parameters at frequency w (M lambda = m w), on the degree-n energy shell."""
    field = m * frequency
    nu = 2 * m * scenario.alpha / math.sqrt(field)
    theta = 2 * m * scenario.eta / field**1.5
    return HeunParams.on_energy_shell(n, l, theta=theta, nu=nu)


def truncation_residual(scenario: ConfinementSpec, n: int, l: int, m: float, frequency):
    """a_{n+1} as a function of frequency, beta fixed by the degree-n condition."""
    w = np.asarray(frequency, dtype=float)
    field = m * w
    nu = 2 * m * scenario.alpha / np.sqrt(field)
    theta = 2 * m * scenario.eta / field**1.5
    beta = 2.0 * (n + 1 + abs(l)) - theta**2 / 4
    a = recurrence(2 * abs(l), theta, nu, beta, n + 1)[n + 1]
    return a if np.ndim(a) else float(a)


def scan_window(scenario: ConfinementSpec, m: float) -> tuple[float, float]:
    scale = 2 * m * scenario.alpha**2 + (scenario.eta**2 / (2 * m)) ** (1 / 3) + 1
    return 1e-4 * scale, 1e4 * scale


def frequency_solve_general(scenario: ConfinementSpec, n: int, l: int, m: float,
                            points: int = 2000, rtol: float = 1e-14) -> list[float]:
    """All positive frequencies at which the degree-n series truncates.

    Sign changes of a_{n+1} on a logarithmic grid are refined by bisection.
    Roots where a_{n+1} only touches zero are not detected.
    """
    if not isinstance(scenario, CONSTRAINED):
        raise DomainError(f"frequency solve needs a Coulomb, linear or mixed scenario, got {scenario.name}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    _positive("m", m)
    lo, hi = scan_window(scenario, m)
    grid = np.geomspace(lo, hi, points)
    vals = truncation_residual(scenario, n, l, m, grid)
    f = lambda w: truncation_residual(scenario, n, l, m, w)
    roots = []
    for i in range(points - 1):
        if vals[i] == 0.0:
            roots.append(float(grid[i]))
        elif vals[i] * vals[i + 1] < 0:
            roots.append(_bisect(f, float(grid[i]), float(grid[i + 1]), float(vals[i]), rtol=rtol))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    if not roots:
        log.warning("no truncating frequency for %s n=%d l=%d in window [%.3g, %.3g]",
                    scenario.name, n, l, lo, hi)
    return roots


# --------------------------------------------------------------------------
# Wavefunctions


@dataclass
class RadialSolution:
    """R(r) = norm * exp(gaussian r^2 + linear r) r^power * sum_k coefficients[k] r^k.

    The radius is dimensionless, r = sqrt(M lambda) rho, and the norm makes
    the integral of R^2 r dr over the domain equal to one.
    """

    n: int
    l: int
    energy: float
    frequency: float
    coefficients: np.ndarray
    gaussian: float = -0.5
    linear: float = 0.0
    power: int = 0
    r_max: float = math.inf
    norm: float = 1.0
    heun: Optional[HeunParams] = None
    grid: np.ndarray = field(default_factory=lambda: np.zeros(0))
    values: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def unnormalized(self, r):
        r = np.asarray(r, dtype=float)
        poly = np.polynomial.polynomial.polyval(r, self.coefficients)
        return np.exp(self.gaussian * r**2 + self.linear * r) * r**self.power * poly

    def __call__(self, r):
        return self.norm * self.unnormalized(r)

    def density(self, r):
        """|R(r)|^2 r, the radial probability density."""
        r = np.asarray(r, dtype=float)
        return self(r) ** 2 * r


def _integrate(f, a, b, panels, nodes=64):
    x, w = legendre.leggauss(nodes)
    edges = np.linspace(a, b, panels + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        xm = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        total += 0.5 * (hi - lo) * np.dot(w, f(xm))
    return total


def _cutoff(integrand, tail=1e-14):
    r = np.linspace(0, 50, 5001)
    vals = integrand(r)
    peak = vals.max()
    beyond = np.nonzero(vals > tail * peak)[0]
    return float(r[min(beyond[-1] + 1, len(r) - 1)])


def assemble_radial_solution(scenario: ConfinementSpec, n: int, l: int, m: float, frequency: float,
                             grid: Optional[np.ndarray] = None, tol: float = 1e-9) -> RadialSolution:
    """Normalized radial wavefunction for a truncating (constrained) or hard-wall state.

    For Coulomb, linear and mixed scenarios ``frequency`` must make the degree-n
    series terminate (|a_{n+1}| below ``tol`` relative to the retained
    coefficients). For a hard wall the state is the n-th Kummer-zero level at
    the given frequency.
    """
    _positive("frequency", frequency)
    grid = np.linspace(0.0, 6.0, 601) if grid is None else np.asarray(grid, dtype=float)
    if isinstance(scenario, HardWall):
        sol = _hardwall_solution(scenario, n, l, m, frequency)
    elif isinstance(scenario, CONSTRAINED):
        if n < 1:
            raise DomainError(f"n must be >= 1 for constrained scenarios, got {n}")
        hp = heun_params_at(scenario, n, l, m, frequency)
        coeffs = heun_coefficients(hp, n + 1).coefficients
        c1, c2 = truncation_conditions(n, hp)
        scale = max(1.0, float(np.max(np.abs(coeffs[: n + 1]))))
        if abs(c2) > tol * scale:
            raise TruncationError(
                f"frequency {frequency!r} does not truncate the {scenario.name} series at n={n}, "
                f"l={l}: |a_{n + 1}| = {abs(c2):.3e}"
            )
        level = constrained_energy(scenario, n, l, m, frequency)
        sol = RadialSolution(n, l, level.energy, frequency, coeffs[: n + 1].copy(),
                             linear=-hp.theta / 2, power=abs(l), heun=hp)
    else:
        raise DomainError(f"no wavefunction for scenario {scenario.name}")

    dens = lambda r: sol.unnormalized(r) ** 2 * r
    r_end = sol.r_max if math.isfinite(sol.r_max) else _cutoff(dens)
    total = _integrate(dens, 0.0, r_end, panels=max(8, int(math.ceil(r_end))))
    sol.norm = 1.0 / math.sqrt(total)
    sol.grid = grid
    inside = grid <= sol.r_max
    sol.values = np.where(inside, sol(np.minimum(grid, sol.r_max)), 0.0)
    return sol


def _hardwall_solution(scenario: HardWall, n, l, m, frequency):
    params = SystemParams.from_field(m, m * frequency)
    level = hardwall_energy_exact(n, l, params, scenario.rho0)
    F, L = params.field, abs(l)
    a = (L + 1) / 2 - m * level.energy / (2 * F) + l / 2
    r0 = math.sqrt(F) * scenario.rho0
    # M(a, b, r^2) as a power series in r (even powers only)
    coeffs = [1.0]
    term = 1.0
    for k in range(10_000):
        term *= (a + k) / ((L + 1 + k) * (k + 1))
        coeffs += [0.0, term]
        if abs(term) * max(r0, 1.0) ** (2 * k + 2) < 1e-17 and k > 2:
            break
    return RadialSolution(n, l, level.energy, frequency, np.array(coeffs), power=L, r_max=r0)
