"""Command-line front end: figure sweeps, trajectory dumps, point reports.

Subcommands
    fig1       rate of Bell-diagonal states versus weight a      (curve)
    fig2       positivity indicator R over (p, |q|)              (grid)
    fig3       XY-family rate over (qR, qI), infeasible masked   (grid)
    evolve     integrate a state and dump the trajectory         (table)
    rate       one-point rate by all applicable routes           (report)
    criterion  entangling-vs-decohering threshold report         (report)

All output is CSV or JSON data (plots are left to downstream tools).
Exit codes: 0 ok, 2 bad arguments, 3 infeasible parameters, 4 numerical
failure.
"""

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .entanglement import eof
from .errors import (
    DegenerateDirectionError,
    DomainError,
    EigenFailureError,
    EntrateError,
    InfeasibleRangeError,
    KinkRegionError,
    NotPositiveError,
    ParseError,
    PositivityViolationError,
    SeparableRegionError,
    StepSizeTooLargeError,
    TraceNotOneError,
    NonHermitianError,
    WeightError,
)
from .lindblad import ModelParams, Trajectory, default_step, integrate, rhs_damped_xy
from .qstate import (
    DensityMatrix,
    WernerParams,
    XYFamilyParams,
    new_density,
    werner_state,
    xy_positivity,
    xy_state,
)
from .rate import (
    criterion_threshold_value,
    rate_chain,
    rate_numeric,
    rate_werner,
    rate_xy,
    rate_xy_value,
)

CURVE_POINTS = 201
GRID_POINTS = 101
FEASIBILITY_TOL = 1e-12


@dataclass(frozen=True)
class SweepConfig:
    command: str
    ranges: dict
    params: ModelParams
    out: str | None
    fmt: str

    def __post_init__(self):
        for name, (start, stop, count) in self.ranges.items():
            if count < 2:
                raise InfeasibleRangeError(f"axis {name} needs at least 2 points")
            if not (np.isfinite(start) and np.isfinite(stop)):
                raise InfeasibleRangeError(f"axis {name} range is not finite")

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "ranges": {k: list(v) for k, v in self.ranges.items()},
            "omega": self.params.omega,
            "g": self.params.g,
            "gamma": self.params.gamma,
        }


def _fmt(x) -> str:
    if x is None:
        return ""
    return format(float(x), ".17g")


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(cell) if not isinstance(cell, str) else cell for cell in row)
                 for row in rows)
    return "\n".join(lines) + "\n"


def _json_doc(obj: dict) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------- fig1

def cmd_fig1(args) -> int:
    gam, cd = args.gamma, args.cd
    count = args.grid or CURVE_POINTS
    a_max = 1.0 - cd
    a_min = 0.55
    if cd < 0 or a_max <= a_min or a_max <= 0.5:
        raise InfeasibleRangeError(
            f"no valid sweep range for c+d = {cd!r}: needs a in ({a_min}, {a_max})"
        )
    a_max = min(a_max, 0.9)
    config = SweepConfig(
        "fig1", {"a": (a_min, a_max, count)}, ModelParams(args.omega, args.g, gam),
        args.out, args.format,
    )
    a_grid = np.linspace(a_min, a_max, count)
    values = []
    for a in a_grid:
        w = WernerParams(a, 1.0 - a - cd, cd / 2.0, cd / 2.0)
        values.append(rate_werner(w, config.params))
    if args.format == "json":
        _emit(args, _json_doc({
            "config": config.to_dict() | {"cd": cd},
            "axes": {"a": [float(a) for a in a_grid]},
            "values": values,
        }))
    else:
        _emit(args, _csv(["a", "rate"], [[a, v] for a, v in zip(a_grid, values)]))
    return 0


# ---------------------------------------------------------------- fig2

def cmd_fig2(args) -> int:
    count = args.grid or GRID_POINTS
    config = SweepConfig(
        "fig2", {"p": (0.0, 1.0, count), "qabs": (0.0, 0.5, count)},
        ModelParams(args.omega, args.g, args.gamma), args.out, args.format,
    )
    p_grid = np.linspace(0.0, 1.0, count)
    q_grid = np.linspace(0.0, 0.5, count)
    values = [[xy_positivity(p, q) for q in q_grid] for p in p_grid]
    if args.format == "json":
        _emit(args, _json_doc({
            "config": config.to_dict(),
            "axes": {"p": list(map(float, p_grid)), "qabs": list(map(float, q_grid))},
            "values": values,
        }))
    else:
        rows = [[p, q, values[i][j]] for i, p in enumerate(p_grid) for j, q in enumerate(q_grid)]
        _emit(args, _csv(["p", "qabs", "R"], rows))
    return 0


# ---------------------------------------------------------------- fig3

def _fig3_cell(p, qr, qi, params):
    """One sweep cell: (R, feasible flag, formula value or None).

    The closed form is evaluated on its whole domain 0 < |q| <= 1/2; the
    feasible flag records joint state positivity (R <= 1e-12) separately,
    so infeasible cells are flagged yet still carry the formula value.
    """
    q = complex(qr, qi)
    r = xy_positivity(p, q)
    feasible = r <= FEASIBILITY_TOL
    try:
        val = rate_xy_value(p, q, params.g, params.gamma)
    except (SeparableRegionError, DomainError):
        val = None
    return r, feasible, val


def cmd_fig3(args) -> int:
    count = args.grid or GRID_POINTS
    params = ModelParams(args.omega, args.g, args.gamma)
    config = SweepConfig(
        "fig3", {"qr": (0.0, 0.5, count), "qi": (0.0, 0.5, count)},
        params, args.out, args.format,
    )
    qr_grid = np.linspace(0.0, 0.5, count)
    qi_grid = np.linspace(0.0, 0.5, count)

    def compute_row(qr):
        return [_fig3_cell(args.p, qr, qi, params) for qi in qi_grid]

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            grid = list(pool.map(compute_row, qr_grid))
    else:
        grid = [compute_row(qr) for qr in qr_grid]

    best = worst = None
    for i, qr in enumerate(qr_grid):
        for j, qi in enumerate(qi_grid):
            _, _, val = grid[i][j]
            if val is None:
                continue
            if best is None or val > best[0]:
                best = (val, qr, qi)
            if worst is None or val < worst[0]:
                worst = (val, qr, qi)
    summary = (
        f"argmax qr={_fmt(best[1])} qi={_fmt(best[2])} rate={_fmt(best[0])}\n"
        f"argmin qr={_fmt(worst[1])} qi={_fmt(worst[2])} rate={_fmt(worst[0])}\n"
        if best and worst else "all cells masked\n"
    )
    print(summary, end="", file=sys.stderr)

    if args.format == "json":
        _emit(args, _json_doc({
            "config": config.to_dict() | {"p": args.p},
            "axes": {"qr": list(map(float, qr_grid)), "qi": list(map(float, qi_grid))},
            "values": [[cell[2] for cell in row] for row in grid],
            "R": [[cell[0] for cell in row] for row in grid],
            "argmax": {"qr": best[1], "qi": best[2], "rate": best[0]} if best else None,
            "argmin": {"qr": worst[1], "qi": worst[2], "rate": worst[0]} if worst else None,
        }))
    else:
        rows = []
        for i, qr in enumerate(qr_grid):
            for j, qi in enumerate(qi_grid):
                r, feas, val = grid[i][j]
                rows.append([qr, qi, r, "1" if feas else "0", val])
        _emit(args, _csv(["qr", "qi", "R", "feasible", "rate"], rows))
    return 0


# ---------------------------------------------------------------- evolve

def _parse_state(tokens: list[str]) -> DensityMatrix:
    if not tokens:
        raise ParseError("missing initial state spec")
    kind, rest = tokens[0], tokens[1:]
    try:
        if kind == "werner":
            if len(rest) != 4:
                raise ParseError("werner spec needs: werner A B C D")
            return werner_state(WernerParams(*map(float, rest)))
        if kind == "xy":
            if len(rest) != 3:
                raise ParseError("xy spec needs: xy P QR QI")
            p, qr, qi = map(float, rest)
            return xy_state(XYFamilyParams(p, complex(qr, qi)))
        if kind == "matrix":
            if len(rest) != 1:
                raise ParseError("matrix spec needs: matrix PATH")
            try:
                mat = np.loadtxt(rest[0], dtype=complex)
            except OSError as exc:
                raise ParseError(f"cannot read matrix file: {exc}") from exc
            return new_density(mat)
    except ValueError as exc:
        raise ParseError(f"bad state spec {tokens}: {exc}") from exc
    raise ParseError(f"unknown state kind {kind!r} (expected werner | xy | matrix)")


def _evolve_rows(traj: Trajectory) -> tuple[list[str], list[list]]:
    header = ["t"]
    for i in range(4):
        for j in range(4):
            header += [f"rho{i + 1}{j + 1}_re", f"rho{i + 1}{j + 1}_im"]
    header += ["trace", "min_eig", "E", "rate_numeric"]
    rows = []
    n = len(traj)
    for k in range(n):
        m = traj.states[k].elements
        row = [traj.times[k]]
        for i in range(4):
            for j in range(4):
                row += [m[i, j].real, m[i, j].imag]
        row += [
            m.trace().real,
            float(np.linalg.eigvalsh(m).min()),
            eof(traj.states[k]),
            rate_numeric(traj, k) if 1 <= k <= n - 2 else None,
        ]
        rows.append(row)
    return header, rows


def cmd_evolve(args) -> int:
    rho0 = _parse_state(args.state)
    params = ModelParams(args.omega, args.g, args.gamma)
    dt = args.dt if args.dt else default_step(params)
    traj = integrate(lambda r: rhs_damped_xy(params, r), rho0, args.t_end, dt)
    header, rows = _evolve_rows(traj)
    if args.format == "json":
        _emit(args, _json_doc({
            "config": {"command": "evolve", "state": args.state, "omega": params.omega,
                       "g": params.g, "gamma": params.gamma, "t_end": args.t_end, "dt": dt},
            "axes": {"t": [float(t) for t in traj.times]},
            "values": {"columns": header[1:],
                       "rows": [[None if v is None else float(v) for v in row[1:]]
                                for row in rows]},
        }))
    else:
        _emit(args, _csv(header, rows))
    return 0


# ---------------------------------------------------------------- rate

def _three_route_report(rho0, closed, params, dt) -> list[tuple[str, float]]:
    traj = integrate(lambda r: rhs_damped_xy(params, r), rho0, 2 * dt, dt)
    lines = [("rate_closed_form", closed)]
    try:
        chain = rate_chain(rho0, rhs_damped_xy(params, rho0)).gamma_total
        lines.append(("rate_chain", chain))
    except KinkRegionError:
        lines.append(("rate_chain", None))
    lines.append(("rate_numeric_at_dt", rate_numeric(traj, 1)))
    return lines


def cmd_rate(args) -> int:
    params = ModelParams(args.omega, args.g, args.gamma)
    dt = args.dt if args.dt else 1e-3 / max(args.g, args.gamma, 1.0)
    if args.p is not None:
        x = XYFamilyParams(args.p, complex(args.qr, args.qi))
        rho0 = xy_state(x)
        lines = _three_route_report(rho0, rate_xy(x, params), params, dt)
        point = {"family": "xy", "p": args.p, "qr": args.qr, "qi": args.qi}
    elif args.a is not None:
        w = WernerParams(args.a, 1.0 - args.a - args.cd, args.cd / 2.0, args.cd / 2.0)
        rho0 = werner_state(w)
        lines = _three_route_report(rho0, rate_werner(w, params), params, dt)
        point = {"family": "werner", "a": args.a, "cd": args.cd}
    else:
        raise ParseError("rate needs either --p/--qr/--qi or --a/--cd")

    if args.format == "json":
        _emit(args, _json_doc({"config": point | {"g": params.g, "gamma": params.gamma,
                                                  "omega": params.omega, "dt": dt},
                               "values": {k: v for k, v in lines}}))
    else:
        text = "".join(f"{k} = {_fmt(v) if v is not None else 'undefined'}\n" for k, v in lines)
        _emit(args, text)
    return 0


# ---------------------------------------------------------------- criterion

def cmd_criterion(args) -> int:
    params = ModelParams(args.omega, args.g, args.gamma)
    q = complex(args.qr, args.qi)
    rate = rate_xy_value(args.p, q, params.g, params.gamma)
    r = xy_positivity(args.p, q)
    ratio = params.g / params.gamma if params.gamma > 0 else float("inf")
    note = None if r <= FEASIBILITY_TOL else f"point infeasible as a state: R = {_fmt(r)}"
    try:
        threshold = criterion_threshold_value(args.p, q)
        if threshold > 0:
            predicted = "+" if ratio > threshold else ("0" if ratio == threshold else "-")
        else:
            predicted = "-"
    except DegenerateDirectionError as exc:
        threshold = None
        predicted = "-"
        note = str(exc) if note is None else f"{note}; {exc}"

    computed = "+" if rate > 0 else ("0" if rate == 0 else "-")
    if args.format == "json":
        _emit(args, _json_doc({
            "config": {"p": args.p, "qr": args.qr, "qi": args.qi,
                       "g": params.g, "gamma": params.gamma},
            "values": {"threshold": threshold, "g_over_gamma": ratio,
                       "predicted_sign": predicted, "rate": rate,
                       "computed_sign": computed, "R": r, "note": note},
        }))
    else:
        lines = [
            f"threshold = {_fmt(threshold) if threshold is not None else 'undefined'}",
            f"g/gamma = {_fmt(ratio)}",
            f"predicted_sign = {predicted}",
            f"rate = {_fmt(rate)}",
            f"computed_sign = {computed}",
        ]
        if note:
            lines.append(f"note = {note}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------- parser

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma", type=float, default=0.01, help="damping rate")
    p.add_argument("--g", type=float, default=0.2, help="qubit-qubit coupling")
    p.add_argument("--omega", type=float, default=1.0, help="qubit frequency")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="entrate", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fig1", help="Bell-diagonal rate versus weight a")
    p.add_argument("--cd", type=float, default=0.1, help="c + d, split evenly")
    p.add_argument("--grid", type=int, default=None, help="number of points")
    _add_common(p)
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("fig2", help="positivity indicator R over (p, |q|)")
    p.add_argument("--grid", type=int, default=None, help="points per axis")
    _add_common(p)
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("fig3", help="XY-family rate over (qR, qI)")
    p.add_argument("--p", type=float, default=0.6)
    p.add_argument("--grid", type=int, default=None, help="points per axis")
    p.add_argument("--threads", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_fig3)

    p = sub.add_parser("evolve", help="integrate and dump a trajectory")
    p.add_argument("state", nargs="+",
                   help="initial state: werner A B C D | xy P QR QI | matrix PATH")
    p.add_argument("--t-end", type=float, default=10.0)
    p.add_argument("--dt", type=float, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("rate", help="one-point rate by all applicable routes")
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--qr", type=float, default=0.0)
    p.add_argument("--qi", type=float, default=0.0)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--cd", type=float, default=0.1)
    p.add_argument("--dt", type=float, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("criterion", help="entangling-vs-decohering report")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--qr", type=float, default=0.0)
    p.add_argument("--qi", type=float, default=0.0)
    _add_common(p)
    p.set_defaults(func=cmd_criterion)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PositivityViolationError, WeightError, InfeasibleRangeError,
            SeparableRegionError, NotPositiveError, TraceNotOneError,
            NonHermitianError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3
    except (EigenFailureError, StepSizeTooLargeError, KinkRegionError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4
    except EntrateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
