"""Command-line front end: ``mqlandau {spectrum,frequency,wavefunction,verify}``.

Exit codes: 0 success, 1 invalid input or failed verification, 2 numerical
non-convergence. Negative values for --l need the ``--l=-1..1`` spelling.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from typing import Optional

import numpy as np

from mqlandau import __version__
from mqlandau.errors import NonConvergenceError
from mqlandau.fields import SystemParams
from mqlandau.oracle import RadialGrid, RadialProblem, fd_eigenvalues, fd_hardwall_eigenvalues, suggest_rho_max
from mqlandau.report import SCHEMA_ID, fmt, rows_to_csv, to_json, write_atomic
from mqlandau.spectra import (
    Coulomb,
    CoulombLinear,
    HardWall,
    Linear,
    NoConfinement,
    assemble_radial_solution,
    constrained_energy,
    frequency_solve_general,
    hardwall_energy_asymptotic,
    hardwall_energy_exact,
    landau_energy,
    mixed_frequency_ground,
)
from mqlandau.verify import FAULTS, VerifyConfig, ground_frequency, run_suite

log = logging.getLogger("mqlandau")

SCENARIOS = ("none", "hardwall", "coulomb", "linear", "mixed")
CUBIC_NOTE = ("mixed n=1 frequency: the implemented cubic keeps the alpha*eta factor in its linear "
              "coefficient (re-derived from a_2 = 0); the commonly printed form without it is "
              "reported as frequency_printed_cubic")


class UsageError(ValueError):
    """Invalid flag combination; the message names the offending flag."""


def int_range(text: str) -> list[int]:
    """'0..2' -> [0, 1, 2]; '0,-1,1' -> [0, -1, 1]; '3' -> [3]."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise argparse.ArgumentTypeError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer or range: {text!r}") from None
    return out


def _add_physics(p: argparse.ArgumentParser):
    p.add_argument("--scenario", choices=SCENARIOS, required=True)
    p.add_argument("--m", type=float, default=1.0, help="particle mass (default 1)")
    p.add_argument("--alpha", type=float, help="Coulomb-type coupling")
    p.add_argument("--eta", type=float, help="linear coupling")
    p.add_argument("--Mlambda", type=float, help="effective field M*lambda (hardwall, none)")
    p.add_argument("--rho0", type=float, help="hard-wall radius")
    p.add_argument("--n", type=int_range, default=[1], help="radial quantum number(s), e.g. 1 or 0..2")
    p.add_argument("--l", type=int_range, default=[0], help="angular momentum, e.g. 0..2 or --l=-1..1")


def _add_output(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--json", dest="format", action="store_const", const="json")
    p.add_argument("--out", help="write here (atomically) instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mqlandau", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="energies, constrained frequencies and optional oracle check")
    _add_physics(sp)
    sp.add_argument("--exact", action="store_true", help="hardwall: exact Kummer-zero energies")
    sp.add_argument("--oracle", action="store_true", help="add finite-difference eigenvalues")
    sp.add_argument("--grid", type=int, default=4000, help="oracle grid points (default 4000)")
    sp.add_argument("--rho-max", type=float, help="oracle outer radius override")
    _add_output(sp)

    fp = sub.add_parser("frequency", help="all truncating frequencies for (n, l)")
    _add_physics(fp)
    _add_output(fp)

    wp = sub.add_parser("wavefunction", help="normalized radial wavefunction as CSV")
    _add_physics(wp)
    wp.add_argument("--root", type=int, default=0, help="which truncating frequency when several exist")
    wp.add_argument("--r-max", type=float, default=6.0, help="end of the r grid (default 6)")
    wp.add_argument("--points", type=int, default=601, help="grid points (default 601)")
    wp.add_argument("--out", help="CSV destination (default stdout)")

    vp = sub.add_parser("verify", help="run the self-verification suite")
    vp.add_argument("--grid", type=int, default=4000, help="oracle grid points (default 4000)")
    vp.add_argument("--fault", choices=FAULTS, help="inject a known defect to exercise the checks")
    vp.add_argument("--seed", type=int, default=VerifyConfig.seed)
    _add_output(vp)
    return parser


# --------------------------------------------------------------------------


def make_scenario(args):
    s = args.scenario
    needs = {"hardwall": ("rho0", "Mlambda"), "coulomb": ("alpha",), "linear": ("eta",),
             "mixed": ("alpha", "eta"), "none": ("Mlambda",)}[s]
    for flag in needs:
        v = getattr(args, flag)
        if v is None:
            raise UsageError(f"--{flag} is required for --scenario {s}")
    if not args.m > 0:
        raise UsageError(f"--m must be > 0, got {args.m}")
    forbidden = {"alpha", "eta", "rho0", "Mlambda"} - set(needs)
    for flag in sorted(forbidden):
        if getattr(args, flag) is not None:
            if flag == "Mlambda":
                raise UsageError(f"--Mlambda is fixed by the truncation condition for --scenario {s}; omit it")
            raise UsageError(f"--{flag} does not apply to --scenario {s}")
    for flag in needs:
        v = getattr(args, flag)
        if flag == "Mlambda":
            if not v >= 0:
                raise UsageError(f"--Mlambda must be >= 0, got {v}")
        elif not v > 0:
            raise UsageError(f"--{flag} must be > 0, got {v}")
    if s == "none" and not args.Mlambda > 0:
        raise UsageError(f"--Mlambda must be > 0 for --scenario none, got {args.Mlambda}")
    if s in ("coulomb", "linear", "mixed") and min(args.n) < 1:
        raise UsageError(f"--n must be >= 1 for --scenario {s} (ground state is n = 1)")
    if min(args.n) < 0:
        raise UsageError("--n must be >= 0")
    return {"none": lambda: NoConfinement(), "hardwall": lambda: HardWall(args.rho0),
            "coulomb": lambda: Coulomb(args.alpha), "linear": lambda: Linear(args.eta),
            "mixed": lambda: CoulombLinear(args.alpha, args.eta)}[s]()


def _config(args, **extra) -> dict:
    cfg = {"scenario": args.scenario, "m": args.m}
    for flag in ("alpha", "eta", "Mlambda", "rho0"):
        if getattr(args, flag, None) is not None:
            cfg[flag] = getattr(args, flag)
    cfg["n"] = list(args.n)
    cfg["l"] = list(args.l)
    cfg.update(extra)
    cfg["version"] = __version__
    return cfg


def _frequencies(sc, n, l, m):
    """Truncating frequencies: closed form at n = 1, recurrence scan otherwise."""
    if n == 1:
        return [ground_frequency(sc, l, m)]
    return frequency_solve_general(sc, n, l, m)


def _oracle_nearest(problem, target, points, rho_max=None, hard_wall=False):
    if hard_wall:
        levels = fd_hardwall_eigenvalues(problem, RadialGrid(problem.rho0, points), count=10)
    else:
        rho_max = rho_max or suggest_rho_max(problem, target)
        levels = fd_eigenvalues(problem, RadialGrid(rho_max, points), count=10)
    e = min((lv.energy for lv in levels), key=lambda x: abs(x - target))
    return e, abs(e - target) / abs(target)


def spectrum_rows(args, sc) -> tuple[list[dict], list[str]]:
    rows, notes = [], []
    m = args.m
    for l in args.l:
        for n in args.n:
            if isinstance(sc, HardWall):
                params = SystemParams.from_field(m, args.Mlambda)
                asym = hardwall_energy_asymptotic(n, l, params, sc.rho0).energy
                energy = hardwall_energy_exact(n, l, params, sc.rho0).energy if args.exact else asym
                row = {"n": n, "l": l, "frequency": params.frequency, "energy": energy,
                       "energy_asymptotic": asym, "sqrt_2mE": math.sqrt(2 * m * energy) if energy > 0 else None,
                       "oracle_energy": None, "rel_dev": None}
                if args.oracle:
                    prob = RadialProblem.hard_wall(l, m, args.Mlambda, sc.rho0)
                    row["oracle_energy"], row["rel_dev"] = _oracle_nearest(prob, energy, args.grid, hard_wall=True)
                rows.append(row)
                continue
            if isinstance(sc, NoConfinement):
                params = SystemParams.from_field(m, args.Mlambda)
                level = landau_energy(n, l, params)
                row = {"n": n, "l": l, "frequency": level.frequency, "energy": level.energy,
                       "oracle_energy": None, "rel_dev": None}
                if args.oracle:
                    prob = RadialProblem(l, m, args.Mlambda)
                    row["oracle_energy"], row["rel_dev"] = _oracle_nearest(prob, level.energy, args.grid, args.rho_max)
                rows.append(row)
                continue
            freqs = _frequencies(sc, n, l, m)
            if not freqs:
                notes.append(f"no truncating frequency found for n={n}, l={l}")
            for k, w in enumerate(freqs):
                level = constrained_energy(sc, n, l, m, w)
                row = {"n": n, "l": l, "root": k, "frequency": w, "Mlambda": m * w, "energy": level.energy,
                       "oracle_energy": None, "rel_dev": None}
                if isinstance(sc, CoulombLinear) and n == 1:
                    row["frequency_printed_cubic"] = mixed_frequency_ground(l, m, sc.alpha, sc.eta, corrected=False)
                    if CUBIC_NOTE not in notes:
                        notes.append(CUBIC_NOTE)
                if args.oracle:
                    prob = RadialProblem(l, m, m * w, sc.alpha, sc.eta)
                    row["oracle_energy"], row["rel_dev"] = _oracle_nearest(prob, level.energy, args.grid, args.rho_max)
                rows.append(row)
    return rows, notes


def cmd_spectrum(args) -> int:
    sc = make_scenario(args)
    if args.scenario != "hardwall" and args.exact:
        raise UsageError("--exact only applies to --scenario hardwall")
    if args.grid < 100:
        raise UsageError(f"--grid must be >= 100, got {args.grid}")
    rows, notes = spectrum_rows(args, sc)
    extra = {"exact": args.exact, "oracle": args.oracle}
    if args.oracle:
        extra["grid"] = args.grid
    report = {"schema": SCHEMA_ID, "command": "spectrum", "config": _config(args, **extra),
              "results": rows, "checks": [], "notes": notes}
    _emit(args, report, rows)
    return 0


def cmd_frequency(args) -> int:
    sc = make_scenario(args)
    if args.scenario not in ("coulomb", "linear", "mixed"):
        raise UsageError("--scenario must be coulomb, linear or mixed for the frequency command")
    rows = []
    for l in args.l:
        for n in args.n:
            for k, w in enumerate(frequency_solve_general(sc, n, l, args.m)):
                rows.append({"n": n, "l": l, "root": k, "frequency": w,
                             "energy": constrained_energy(sc, n, l, args.m, w).energy,
                             "oracle_energy": None, "rel_dev": None})
    report = {"schema": SCHEMA_ID, "command": "frequency", "config": _config(args),
              "results": rows, "checks": [], "notes": []}
    _emit(args, report, rows)
    return 0


def cmd_wavefunction(args) -> int:
    sc = make_scenario(args)
    if len(args.n) != 1 or len(args.l) != 1:
        raise UsageError("--n and --l must each name a single value for the wavefunction command")
    if args.points < 2 or not args.r_max > 0:
        raise UsageError("--points must be >= 2 and --r-max > 0")
    n, l, m = args.n[0], args.l[0], args.m
    if isinstance(sc, HardWall):
        if not args.Mlambda > 0:
            raise UsageError("--Mlambda must be > 0 for a hard-wall wavefunction")
        w = args.Mlambda / m
    elif isinstance(sc, NoConfinement):
        raise UsageError("--scenario none has no wavefunction export")
    else:
        freqs = _frequencies(sc, n, l, m)
        if not 0 <= args.root < len(freqs):
            raise UsageError(f"--root {args.root} out of range; {len(freqs)} truncating frequencies found")
        w = freqs[args.root]
    grid = np.linspace(0.0, args.r_max, args.points)
    sol = assemble_radial_solution(sc, n, l, m, w, grid=grid)
    header = {"scenario": args.scenario, "m": m}
    for flag in ("alpha", "eta", "rho0"):
        if getattr(args, flag) is not None:
            header[flag] = getattr(args, flag)
    header.update({"n": n, "l": l, "frequency": w, "Mlambda": m * w, "energy": sol.energy,
                   "radius": "r = sqrt(Mlambda) * rho", "norm": sol.norm, "version": __version__})
    rows = [{"r": float(r), "R": float(v), "density": float(v * v * r)} for r, v in zip(sol.grid, sol.values)]
    text = rows_to_csv(rows, header)
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    if args.grid < 400:
        raise UsageError(f"--grid must be >= 400, got {args.grid}")
    cfg = VerifyConfig(points=args.grid, fault=args.fault, seed=args.seed)
    checks = run_suite(cfg)
    rows = [c.as_dict() for c in checks]
    report = {"schema": SCHEMA_ID, "command": "verify",
              "config": {"grid": args.grid, "fault": args.fault, "seed": args.seed,
                         "mixed_alpha": cfg.mixed_alpha, "mixed_eta": cfg.mixed_eta, "version": __version__},
              "results": [], "checks": rows, "notes": cfg.notes}
    _emit(args, report, rows)
    for c in checks:
        log.info("%s %s", "PASS" if c.passed else "FAIL", c.name)
    return 0 if all(c.passed for c in checks) else 1


def _emit(args, report: dict, rows: list[dict]) -> None:
    if args.format == "json":
        text = to_json(report)
    else:
        flat = lambda v: " ".join(fmt(float(x)) for x in v) if isinstance(v, list) else v
        text = rows_to_csv([{k: flat(v) for k, v in r.items()} for r in rows])
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


COMMANDS = {"spectrum": cmd_spectrum, "frequency": cmd_frequency,
            "wavefunction": cmd_wavefunction, "verify": cmd_verify}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage; map to the validation code
        return 1 if exc.code else 0
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except NonConvergenceError as exc:
        print(f"error: numerical non-convergence: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
