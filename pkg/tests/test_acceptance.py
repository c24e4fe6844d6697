"""Acceptance criteria, one test each. Run with ``pytest tests/test_acceptance.py -s``
to see a PASS/FAIL line per criterion."""

import math
import time

import numpy as np
import pytest
from scipy import optimize

from mqlandau import SystemParams
from mqlandau.heun import HeunSeries, heun_coefficients, radial_function, radial_ode_residual
from mqlandau.oracle import RadialGrid, RadialProblem, convergence_study, fd_eigenvalues, fd_hardwall_eigenvalues, suggest_rho_max
from mqlandau.spectra import (
    Coulomb,
    CoulombLinear,
    Linear,
    assemble_radial_solution,
    constrained_energy,
    coulomb_frequency_ground,
    frequency_solve_general,
    hardwall_energy_asymptotic,
    hardwall_energy_exact,
    linear_frequency_ground,
    mixed_frequency_ground,
)

SWEEP = [(l, m, c) for l in range(-3, 4) for m in (0.5, 1.0, 2.0) for c in (0.5, 1.0)]


def verdict(number, title, ok, detail):
    print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
    assert ok, detail


def _rel(a, b):
    return abs(a - b) / abs(b)


def test_criterion_1_coulomb_ground_frequency():
    t0 = time.perf_counter()
    worst = 0.0
    for l, m, a in SWEEP:
        roots = frequency_solve_general(Coulomb(a), 1, l, m)
        worst = max(worst, math.inf if len(roots) != 1 else _rel(roots[0], 2 * m * a**2 / (1 + 2 * abs(l))))
    dt = time.perf_counter() - t0
    verdict(1, "Coulomb n=1 frequency", worst <= 1e-9 and dt < 1.0, f"max rel dev {worst:.2e} (<=1e-9), {dt:.2f} s (<1 s)")


def test_criterion_2_linear_ground_frequency():
    t0 = time.perf_counter()
    worst = 0.0
    for l, m, e in SWEEP:
        roots = frequency_solve_general(Linear(e), 1, l, m)
        ref = (e**2 * (2 * abs(l) + 3) / (2 * m)) ** (1 / 3)
        worst = max(worst, math.inf if len(roots) != 1 else _rel(roots[0], ref))
    dt = time.perf_counter() - t0
    verdict(2, "linear n=1 frequency", worst <= 1e-9 and dt < 1.0, f"max rel dev {worst:.2e} (<=1e-9), {dt:.2f} s (<1 s)")


def test_criterion_3_mixed_cubic():
    w = mixed_frequency_ground(0, 1.0, 1.0, 1.0)
    bracket = optimize.brentq(lambda x: x**3 - 2 * x**2 - 4 * x - 1.5, 1.0, 10.0, xtol=1e-15, rtol=1e-15)
    root_ok = abs(w - 3.3345) < 5e-5 and _rel(w, bracket) <= 1e-8
    lim_c = max(_rel(mixed_frequency_ground(l, m, a, 1e-8), coulomb_frequency_ground(l, m, a)) for l, m, a in SWEEP)
    lim_l = max(_rel(mixed_frequency_ground(l, m, 1e-8, e), linear_frequency_ground(l, m, e)) for l, m, e in SWEEP)
    recurrence = frequency_solve_general(CoulombLinear(1.0, 1.0), 1, 0, 1.0)
    rec_dev = _rel(recurrence[0], w) if len(recurrence) == 1 else math.inf
    printed = mixed_frequency_ground(0, 1.0, 1.0, 1.0, corrected=False)
    printed_dev = _rel(printed, recurrence[0])
    ok = root_ok and lim_c <= 1e-5 and lim_l <= 1e-5 and rec_dev <= 1e-8 and printed_dev > 0.01
    verdict(3, "mixed cubic", ok,
            f"root {w:.10f} vs bracket {bracket:.10f}; limits {lim_c:.1e}, {lim_l:.1e} (<=1e-5); "
            f"recurrence vs corrected {rec_dev:.1e} (<=1e-8); recurrence vs printed cubic {printed_dev:.2e} "
            f"(needs >1e-2; the two cubics coincide when alpha*eta = 1)")


def test_criterion_4_ground_energies():
    worst = 0.0
    for l, m, a in SWEEP:
        e = constrained_energy(Coulomb(a), 1, l, m, coulomb_frequency_ground(l, m, a)).energy
        worst = max(worst, _rel(e, 2 * m * a**2 * (abs(l) - l + 2) / (1 + 2 * abs(l))))
    assert constrained_energy(Coulomb(1.0), 1, 0, 1.0, coulomb_frequency_ground(0, 1.0, 1.0)).energy == 4.0
    e_lin = constrained_energy(Linear(1.0), 1, 0, 1.0, linear_frequency_ground(0, 1.0, 1.0)).energy
    closed = 2 * 1.5 ** (1 / 3) - 0.5 * (2 / 3) ** (2 / 3)
    dev_lin = _rel(e_lin, closed)
    ok = worst <= 1e-12 and dev_lin <= 1e-12 and abs(e_lin - 1.907857) < 5e-7
    verdict(4, "ground-state energies", ok, f"Coulomb max rel dev {worst:.1e}; linear E={e_lin:.9f}, rel dev {dev_lin:.1e}")


def test_criterion_5_oracle_membership():
    t0 = time.perf_counter()
    lines, ok = [], True
    for name, sc in (("coulomb", Coulomb(1.0)), ("linear", Linear(1.0)), ("mixed", CoulombLinear(1.0, 1.0))):
        for l in (0, 1, -1):
            w = frequency_solve_general(sc, 1, l, 1.0)[0]
            e = constrained_energy(sc, 1, l, 1.0, w).energy
            prob = RadialProblem(l, 1.0, w, sc.alpha, sc.eta)
            rho_max = suggest_rho_max(prob, e)
            grids = [RadialGrid(rho_max, n) for n in (1000, 2000, 4000)]
            rep = convergence_study(prob, grids, reference=e)
            levels = fd_eigenvalues(prob, grids[-1], count=10)
            dev = min(abs(lv.energy - e) for lv in levels) / abs(e)
            ok &= dev <= 1e-3 and 1.5 <= rep.order <= 2.3
            lines.append(f"{name} l={l:+d} dev {dev:.1e} p={rep.order:.2f}")
    dt = time.perf_counter() - t0
    verdict(5, "oracle membership", ok and dt < 30, "; ".join(lines) + f"; {dt:.1f} s (<30 s)")


def test_criterion_6_landau_limit():
    e = [lv.energy for lv in fd_eigenvalues(RadialProblem(0, 1.0, 1.0), RadialGrid(8.0, 4000), count=3)]
    ground, spacing = abs(e[0] - 1.0), max(abs(b - a - 2.0) for a, b in zip(e, e[1:]))
    verdict(6, "Landau limit", ground <= 1e-4 and spacing <= 1e-3, f"E0-1={ground:.1e} (<=1e-4), spacing dev {spacing:.1e} (<=1e-3)")


def test_criterion_7_hard_wall():
    p = SystemParams.from_field(1.0, 0.0)
    zeros = (2.404825557695773, 5.520078110286311, 8.653727912911013)
    exact = [math.sqrt(2 * hardwall_energy_exact(n, 0, p, 1.0).energy) for n in range(3)]
    asym = [math.sqrt(2 * hardwall_energy_asymptotic(n, 0, p, 1.0).energy) for n in range(3)]
    zero_dev = max(abs(x - j) for x, j in zip(exact, zeros))
    asym_ok = np.allclose(asym, [3 * math.pi / 4, 7 * math.pi / 4, 11 * math.pi / 4], rtol=1e-15)
    errs = [_rel(a, x) for a, x in zip(asym, exact)]
    err_ok = all(e <= b for e, b in zip(errs, (0.021, 0.005, 0.003))) and errs[0] > errs[1] > errs[2]
    p1 = SystemParams.from_field(1.0, 0.01)
    kd = []
    for l in (0, 1):
        e = hardwall_energy_exact(0, l, p1, 1.0).energy
        fd = fd_hardwall_eigenvalues(RadialProblem.hard_wall(l, 1.0, 0.01, 1.0), RadialGrid(1.0, 4000), count=1)[0].energy
        kd.append(_rel(fd, e))
    ok = zero_dev <= 1e-6 and asym_ok and err_ok and max(kd) <= 1e-4
    verdict(7, "hard wall", ok, f"Bessel dev {zero_dev:.1e}; asymptotic errors {[f'{e:.4f}' for e in errs]}; "
                                f"Kummer vs oracle {max(kd):.1e} (<=1e-4)")


def test_criterion_8_truncation_propagation():
    rng = np.random.default_rng(8)
    r = np.linspace(0.2, 4.0, 20)
    worst_tail = worst_res = 0.0
    for _ in range(20):
        m, alpha, eta = rng.uniform(0.5, 2.0), rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0)
        l = int(rng.integers(-3, 4))
        sc = CoulombLinear(alpha, eta)
        w = mixed_frequency_ground(l, m, alpha, eta)
        sol = assemble_radial_solution(sc, 1, l, m, w)
        a = heun_coefficients(sol.heun, 11).coefficients
        worst_tail = max(worst_tail, float(np.max(np.abs(a[2:])) / np.max(np.abs(a))))
        poly = HeunSeries(sol.heun, sol.coefficients, truncated_at=1)
        assert np.allclose(sol(r), sol.norm * radial_function(poly, r), rtol=1e-13)
        worst_res = max(worst_res, float(np.max(np.abs(sol.norm * radial_ode_residual(poly, r)))))
    ok = worst_tail < 1e-12 and worst_res < 1e-9
    verdict(8, "truncation propagation", ok, f"max |a_k|/max|a_j| (k=2..11) {worst_tail:.1e} (<1e-12); "
                                             f"max ODE residual {worst_res:.1e} (<1e-9)")


def test_criterion_9_degeneracy_breaking():
    gaps = {}
    for name, sc in (("coulomb", Coulomb(1.0)), ("linear", Linear(1.0)), ("mixed", CoulombLinear(1.0, 1.0))):
        e = {l: constrained_energy(sc, 1, l, 1.0, frequency_solve_general(sc, 1, l, 1.0)[0]).energy for l in (1, -1)}
        gaps[name] = abs(e[1] - e[-1])
    verdict(9, "degeneracy breaking", all(g > 1e-9 for g in gaps.values()),
            ", ".join(f"{k} |E(+1)-E(-1)|={v:.4f}" for k, v in gaps.items()))
