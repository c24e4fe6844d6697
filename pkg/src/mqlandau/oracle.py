"""Brute-force radial eigensolver used to certify the analytic levels.

Nothing here touches the Heun or Kummer machinery. The radial operator

    -R'' - R'/rho + l^2/rho^2 R + (M lambda)^2 rho^2 R + 2 m alpha/rho R + 2 m eta rho R

is discretized in flux (finite-volume) form on the cell-centred grid
rho_i = (i - 1/2) h, which makes it symmetric after the rescaling
u_i = sqrt(rho_i) R_i. The result is a three-point discretization of
-u'' + [(l^2 - 1/4)/rho^2 + ...] u whose zero-flux face at rho = 0 gives
second-order accuracy for every l, including l = 0. Eigenvalues of the
symmetric tridiagonal matrix come from Sturm-sequence multisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from mqlandau.errors import DomainError, GridTooCoarseError
from mqlandau.spectra import EnergyLevel, Provenance

MAX_COUNT = 20


@dataclass(frozen=True)
class RadialGrid:
    """``points`` cell centres (i - 1/2) h covering (0, rho_max); R vanishes at rho_max."""

    rho_max: float
    points: int

    def __post_init__(self):
        if self.points < 100:
            raise DomainError(f"grid needs at least 100 points, got {self.points}")
        if not self.rho_max > 0:
            raise DomainError(f"rho_max must be > 0, got {self.rho_max}")

    @property
    def h(self) -> float:
        return self.rho_max / (self.points + 0.5)

    @property
    def rho_min(self) -> float:
        return 0.5 * self.h

    @property
    def nodes(self) -> np.ndarray:
        return self.h * (np.arange(1, self.points + 1) - 0.5)


@dataclass(frozen=True)
class RadialProblem:
    """Radial eigenproblem  [operator] R = kappa R  with kappa = 2 m E - energy_sign * 2 M lambda l.

    ``energy_sign`` fixes how the angular term enters the energy. The Coulomb,
    linear and mixed levels use kappa = 2 m E + 2 M lambda l (energy_sign = -1);
    the hard-wall Kummer quantization follows the Hamiltonian's own sign,
    kappa = 2 m E - 2 M lambda l (energy_sign = +1).
    """

    l: int
    m: float
    field: float
    alpha: float = 0.0
    eta: float = 0.0
    rho0: Optional[float] = None
    energy_sign: int = -1

    def __post_init__(self):
        if not self.m > 0:
            raise DomainError(f"mass m must be > 0, got {self.m}")
        if self.field < 0 or self.alpha < 0 or self.eta < 0:
            raise DomainError("field, alpha and eta must be >= 0")
        if self.rho0 is not None and not self.rho0 > 0:
            raise DomainError(f"rho0 must be > 0, got {self.rho0}")
        if self.energy_sign not in (-1, 1):
            raise DomainError(f"energy_sign must be +1 or -1, got {self.energy_sign}")

    @classmethod
    def hard_wall(cls, l: int, m: float, field: float, rho0: float) -> "RadialProblem":
        return cls(l=l, m=m, field=field, rho0=rho0, energy_sign=1)

    def potential(self, rho):
        """Effective potential of the u = sqrt(rho) R equation."""
        rho = np.asarray(rho, dtype=float)
        return ((self.l**2 - 0.25) / rho**2 + self.field**2 * rho**2
                + 2 * self.m * self.alpha / rho + 2 * self.m * self.eta * rho)

    def kappa(self, energy):
        return 2 * self.m * energy - self.energy_sign * 2 * self.field * self.l

    def energy(self, kappa):
        return (kappa + self.energy_sign * 2 * self.field * self.l) / (2 * self.m)


def build_matrix(problem: RadialProblem, grid: RadialGrid) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the symmetric tridiagonal operator (units of kappa)."""
    h = grid.h
    rho = grid.nodes
    face = rho[:-1] + h / 2
    pot = (problem.l**2 / rho**2 + problem.field**2 * rho**2
           + 2 * problem.m * problem.alpha / rho + 2 * problem.m * problem.eta * rho)
    diag = 2.0 / h**2 + pot
    off = -face / (h**2 * np.sqrt(rho[:-1] * rho[1:]))
    return diag, off


def sturm_count(diag: np.ndarray, off: np.ndarray, x) -> np.ndarray:
    """Number of eigenvalues below each shift in ``x`` (vectorized over shifts)."""
    x = np.asarray(x, dtype=float)
    off2 = off**2
    tiny = np.finfo(float).tiny ** 0.5
    q = diag[0] - x
    count = (q < 0).astype(int)
    for i in range(1, len(diag)):
        q = np.where(q == 0, tiny, q)
        q = diag[i] - x - off2[i - 1] / q
        count += q < 0
    return count


def tridiag_eigvalsh(diag: np.ndarray, off: np.ndarray, count: int, probes: int = 31) -> np.ndarray:
    """Lowest ``count`` eigenvalues of a symmetric tridiagonal matrix by Sturm multisection.

    Every pass places ``probes`` shifts inside each still-open bracket and
    narrows it to the sub-interval where the Sturm count crosses its index.
    """
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    if not 1 <= count <= len(diag):
        raise DomainError(f"count must be in 1..{len(diag)}, got {count}")
    rad = np.zeros_like(diag)
    rad[:-1] += np.abs(off)
    rad[1:] += np.abs(off)
    lo0, hi0 = float(np.min(diag - rad)), float(np.max(diag + rad))
    norm = max(abs(lo0), abs(hi0))
    tol = 4 * np.finfo(float).eps * norm
    idx = np.arange(count)
    lo = np.full(count, lo0 - tol)
    hi = np.full(count, hi0 + tol)
    frac = np.arange(1, probes + 1) / (probes + 1)
    for _ in range(64):
        open_ = hi - lo > tol
        if not open_.any():
            break
        k = idx[open_]
        x = lo[k, None] + (hi[k] - lo[k])[:, None] * frac[None, :]
        c = sturm_count(diag, off, x.ravel()).reshape(x.shape)
        below = c <= k[:, None]
        # last probe with count <= index bounds from below, first with count > index from above
        n_below = below.sum(axis=1)
        rows = np.arange(len(k))
        new_lo = np.where(n_below > 0, x[rows, np.maximum(n_below - 1, 0)], lo[k])
        new_hi = np.where(n_below < probes, x[rows, np.minimum(n_below, probes - 1)], hi[k])
        lo[k], hi[k] = new_lo, new_hi
    return 0.5 * (lo + hi)


def fd_eigenvalues(problem: RadialProblem, grid: RadialGrid, count: int = 10,
                   check: bool = False) -> list[EnergyLevel]:
    """Lowest ``count`` energies with R = 0 at grid.rho_max.

    With ``check`` the solve is repeated on a grid of half the points and a
    relative shift above 10% in any eigenvalue raises GridTooCoarseError.
    """
    if not 1 <= count <= MAX_COUNT:
        raise DomainError(f"count must be in 1..{MAX_COUNT}, got {count}")
    kappas = tridiag_eigvalsh(*build_matrix(problem, grid), count)
    energies = problem.energy(kappas)
    if check:
        coarse = RadialGrid(grid.rho_max, max(100, grid.points // 2))
        ec = problem.energy(tridiag_eigvalsh(*build_matrix(problem, coarse), count))
        shift = np.abs(ec - energies) / np.maximum(np.abs(energies), 1e-300)
        if np.any(shift > 0.1):
            raise GridTooCoarseError(
                f"eigenvalues move by up to {shift.max():.1%} between N={coarse.points} and N={grid.points}"
            )
    freq = problem.field / problem.m
    return [EnergyLevel(i, problem.l, float(e), freq, Provenance.ORACLE) for i, e in enumerate(energies)]


def fd_hardwall_eigenvalues(problem: RadialProblem, grid: RadialGrid, count: int = 10,
                            check: bool = False) -> list[EnergyLevel]:
    """Lowest energies with a Dirichlet wall at problem.rho0 (grid.rho_max must equal it)."""
    if problem.rho0 is None:
        raise DomainError("hard-wall problem needs rho0")
    if grid.rho_max != problem.rho0:
        raise DomainError(f"grid rho_max {grid.rho_max} must equal the wall radius {problem.rho0}")
    if problem.alpha or problem.eta:
        raise DomainError("hard-wall oracle takes alpha = eta = 0")
    return fd_eigenvalues(problem, grid, count, check)


def suggest_rho_max(problem: RadialProblem, target_energy: float, decay: float = 20.0) -> float:
    """Radius where a state at ``target_energy`` has decayed by exp(-decay).

    Starts at the outer turning point and integrates the WKB exponent
    sqrt(V - kappa) outward until it reaches ``decay``.
    """
    kappa = problem.kappa(target_energy)
    v = lambda r: float(problem.potential(r)) - kappa
    rs = np.geomspace(1e-6, 1e8, 2801)
    vs = problem.potential(rs) - kappa
    if vs[-1] < 0:
        raise DomainError("potential does not confine at the target energy")
    allowed = np.nonzero(vs < 0)[0]
    # below the potential minimum there is no allowed region; start from the minimum
    i = int(allowed[-1]) if len(allowed) else int(np.argmin(vs))
    lo, hi = float(rs[i]), float(rs[i + 1])
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if v(mid) > 0:
            hi = mid
        else:
            lo = mid
    r, action = hi, 0.0
    step = hi / 200
    while action < decay:
        action += step * math.sqrt(max(v(r + step / 2), 0.0))
        r += step
    return r


@dataclass
class ConvergenceReport:
    points: list[int]
    energies: list[float]
    order: float
    errors: list[float] = field(default_factory=list)
    monotone: bool = True
    reference: Optional[float] = None


def convergence_study(problem: RadialProblem, grids: Sequence[RadialGrid],
                      reference: Optional[float] = None, level: int = 0) -> ConvergenceReport:
    """Observed order of the eigenvalue nearest ``reference`` (or index ``level``).

    The order comes from the last three grids, p = log2((E1 - E2) / (E2 - E3)),
    which needs no reference value. Errors against ``reference`` are reported
    and must shrink monotonically, otherwise ``monotone`` is False.
    """
    if len(grids) < 3:
        raise DomainError("convergence study needs at least 3 grids")
    pts = [g.points for g in grids]
    for a, b in zip(pts, pts[1:]):
        if b != 2 * a:
            raise DomainError(f"grid points must double, got {pts}")
    energies = []
    for g in grids:
        levels = fd_eigenvalues(problem, g, count=max(level + 1, 10 if reference is not None else 1))
        if reference is None:
            energies.append(levels[level].energy)
        else:
            energies.append(min((lv.energy for lv in levels), key=lambda e: abs(e - reference)))
    e1, e2, e3 = energies[-3:]
    order = math.log2(abs((e1 - e2) / (e2 - e3))) if e2 != e3 else math.inf
    report = ConvergenceReport(pts, energies, order, reference=reference)
    if reference is not None:
        report.errors = [abs(e - reference) for e in energies]
        report.monotone = all(b < a for a, b in zip(report.errors, report.errors[1:]))
    else:
        diffs = [abs(b - a) for a, b in zip(energies, energies[1:])]
        report.monotone = all(b < a for a, b in zip(diffs, diffs[1:]))
    return report
