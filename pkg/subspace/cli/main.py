"""
Command line: ``subspace constants|curves|verify|bound``

Exit codes: 0 success, 1 failed verification or no applicable bound, 2
usage error
"""
import argparse
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd

from subspace.bounds import BoundKind, bound_function, c_s, kmm_saturation, ms_threshold
from subspace.core.env import SOLVERS, configure
from subspace.core.load import from_files
from subspace.io import export_csv, export_json
from subspace.lab import (
    Layout,
    PerturbationKind,
    make_scenario,
    regime_for,
    verify_bounds,
    verify_regime,
)
from subspace.optimize import DenominatorKind, solve_threshold
from subspace.utils.errors import ScenarioError, SubspaceError
from subspace.utils.messages import msg_fail, msg_info, msg_ok, msg_warning

SCHEMA_VERSION = 1
CURVE_EDGE = math.sqrt(3) / 2 - 1e-6
DEFAULT_FUNCTIONS = (BoundKind.OFF_OPT, BoundKind.MS, BoundKind.KMM)
DEFAULT_MAX_N = 5

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class CurveGrid:
    """
    Abscissae and functions of a curve table
    """

    x_min: float
    x_max: float
    points: int
    functions: Tuple[BoundKind, ...]

    def __post_init__(self) -> None:
        if not 0.0 <= self.x_min < self.x_max <= CURVE_EDGE:
            raise ValueError(
                "Need 0 <= x_min < x_max <= " + str(CURVE_EDGE) + ", got "
                + str(self.x_min) + ", " + str(self.x_max)
            )
        if self.points < 2:
            raise ValueError("A curve needs at least 2 points, got " + str(self.points))
        if len(self.functions) == 0:
            raise ValueError("No function requested")

    def abscissae(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.points)


def cmd_constants(max_n: int = DEFAULT_MAX_N) -> Tuple[Dict, bool]:
    """
    Threshold constants with their method

    :return: the report and whether every constant was computed
    """
    entries = [
        ("c_s", "closed form 1/2 - 1/2 (1 - sqrt(3)/pi)^3", {}, c_s),
        (
            "generic_threshold",
            "bisection of the optimized generic estimating function at pi/2",
            {"tolerance": 1e-6},
            lambda: solve_threshold(DenominatorKind.GENERIC),
        ),
        (
            "off_threshold",
            "bisection of the optimized off-diagonal estimating function at pi/2",
            {"tolerance": 1e-6},
            lambda: solve_threshold(DenominatorKind.OFF_DIAGONAL),
        ),
        (
            "off_threshold_capped",
            "same with at most max_n partition steps",
            {"tolerance": 1e-6, "max_n": max_n},
            lambda: solve_threshold(DenominatorKind.OFF_DIAGONAL, max_n=max_n),
        ),
        (
            "ms_threshold",
            "bisection of the adaptive Simpson argument of m_ms at 1",
            {"tolerance": 1e-10},
            ms_threshold,
        ),
        ("kmm_saturation", "positive root of (4 - pi^2) x^2 + 6 pi x - 8", {}, kmm_saturation),
    ]
    constants, complete = {}, True
    for name, method, meta, compute in entries:
        entry = {"method": method}
        entry.update(meta)
        try:
            entry["value"] = compute()
            msg_ok(name, "=", round(entry["value"], 9))
        except SubspaceError as e:
            entry["value"] = None
            entry["error"] = str(e)
            complete = False
            msg_warning("Can not compute", name, ":", e)
        constants[name] = entry
    return {"schema_version": SCHEMA_VERSION, "constants": constants}, complete


def _scaled(value: float, raw: bool) -> float:
    if raw:
        return value
    if value >= math.pi / 2:
        return 1.0
    return value * 2 / math.pi


def cmd_curves(grid: CurveGrid, raw: bool = False) -> pd.DataFrame:
    """
    Curve table: a column ``x`` and one column per function, scaled by
    2/pi unless ``raw``. Cells outside a function's domain stay empty
    """
    xs = grid.abscissae()
    table = {"x": xs}
    for kind in grid.functions:
        f = bound_function(kind)
        column = []
        for x in xs:
            x = float(x)
            column.append(_scaled(f(x), raw) if f.contains(x) else float("nan"))
        empty = int(np.isnan(column).sum())
        if empty:
            msg_warning(empty, "cells of", kind.value, "left empty outside its domain")
        table[kind.value] = column
    return pd.DataFrame(table)


def cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    layout, kind = Layout(args.layout), PerturbationKind(args.kind)
    if args.suite:
        dims = (args.dim, args.dim) if args.dim else (2, 40)
        try:
            report = verify_regime(layout, kind, args.trials, args.seed, dims)
        except ScenarioError as e:
            parser.error(str(e))
        except SubspaceError as e:
            msg_fail(e)
            return EXIT_FAILURE
    else:
        if args.strength is None:
            parser.error("verify needs --strength unless --suite is given")
        regime = regime_for(layout, kind)
        if not regime.admits(args.strength):
            parser.error(
                "--strength " + str(args.strength) + " must stay below "
                + str(regime.threshold) + " for " + regime.name
            )
        try:
            spec = make_scenario(layout, kind, args.strength, args.dim or 6, args.seed)
        except ScenarioError as e:
            parser.error(str(e))
        try:
            report = verify_bounds(spec, args.trials)
        except SubspaceError as e:
            msg_fail(e)
            return EXIT_FAILURE
    export_json(report.to_dict(), args.out)
    if args.csv:
        export_csv(report.to_frame(), args.csv)
    if report.passed:
        msg_ok(report.trials, "trials passed, min margin", report.min_margin)
        return EXIT_OK
    msg_fail(report.failure_count, "of", report.trials, "trials failed")
    return EXIT_FAILURE


def parse_sigma(text: str) -> Tuple[List[int], Tuple[float, float]]:
    """
    ``"0,2"`` gives indices, ``"lo:hi"`` gives an interval
    """
    if ":" in text:
        lo, hi = text.split(":", 1)
        return None, (float(lo), float(hi))
    return [int(k) for k in text.split(",") if k.strip() != ""], None


def cmd_bound(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    try:
        indices, interval = parse_sigma(args.sigma)
    except ValueError:
        parser.error("Can not read --sigma " + repr(args.sigma) + ": use 0,1 or lo:hi")
    try:
        ss = from_files(args.a, args.v, sigma=indices, interval=interval)
        report = ss.report_()
    except SubspaceError as e:
        msg_fail(e)
        return EXIT_FAILURE
    export_json(report.to_dict(), args.out)
    failed = not report.enclosure_ok or report.gap_ok is False
    failed = failed or any(c.asserted and c.margin < -1e-9 for c in report.checks)
    if failed:
        msg_fail("A bound or an enclosure fails for", report.regime.name)
        return EXIT_FAILURE
    msg_info("Tightest bound", report.tightest.kind.value, "=", report.tightest.value)
    return EXIT_OK


def _kinds(text: str) -> Tuple[BoundKind, ...]:
    try:
        return tuple(BoundKind(k.strip()) for k in text.split(",") if k.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subspace", description="Bounds on the rotation of spectral subspaces"
    )
    parser.add_argument("--quiet", action="store_true", help="Silence console messages.")
    parser.add_argument("--solver", choices=SOLVERS, help="Eigensolver.")
    parser.add_argument("--workers", type=int, help="Threads for verification trials.")
    parser.add_argument("--oracle-grid", type=int, dest="oracle_grid", help="Grid of the DP oracle.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="Threshold constants (JSON).")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, dest="max_n",
                   help="Step cap of the capped off-diagonal threshold (default: 5).")
    p.add_argument("--out", help="JSON path, default: stdout.")

    p = sub.add_parser("curves", help="Curve table of estimating functions (CSV).")
    p.add_argument("--grid-min", type=float, default=0.0, dest="grid_min")
    p.add_argument("--grid-max", type=float, default=0.69, dest="grid_max")
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--functions", type=_kinds, default=DEFAULT_FUNCTIONS,
                   help="Comma separated kinds, default: off_opt,ms,kmm.")
    p.add_argument("--raw-radians", action="store_true", dest="raw_radians",
                   help="Do not scale the values by 2/pi.")
    p.add_argument("--out", help="CSV path, default: stdout.")

    p = sub.add_parser("verify", help="Bound validity on random instances (JSON).")
    p.add_argument("--layout", choices=[x.value for x in Layout], default=Layout.GROUND_STATE.value)
    p.add_argument("--kind", choices=[k.value for k in PerturbationKind], default=PerturbationKind.GENERIC.value)
    p.add_argument("--strength", type=float, help="||V|| as a multiple of d.")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, help="Dimension, default: 6, or 2..40 with --suite.")
    p.add_argument("--suite", action="store_true", help="Random dimensions and strengths.")
    p.add_argument("--out", help="JSON path, default: stdout.")
    p.add_argument("--csv", help="Per trial CSV path.")

    p = sub.add_parser("bound", help="Bounds for matrices in files (JSON).")
    p.add_argument("--a", required=True, help="Matrix file of A.")
    p.add_argument("--v", required=True, help="Matrix file of V.")
    p.add_argument("--sigma", required=True, help="Eigenvalue indices 0,1 or an interval lo:hi.")
    p.add_argument("--out", help="JSON path, default: stdout.")
    return parser


def main(argv: Sequence[str] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    changes = {"quiet": args.quiet} if args.quiet else {}
    if args.solver:
        changes["eigensolver"] = args.solver
    if args.workers is not None:
        if args.workers < 1:
            parser.error("--workers must be at least 1")
        changes["workers"] = args.workers
    if args.oracle_grid is not None:
        if args.oracle_grid < 100:
            parser.error("--oracle-grid must be at least 100")
        changes["oracle_grid"] = args.oracle_grid
    configure(**changes)

    if args.command == "constants":
        doc, complete = cmd_constants(args.max_n)
        export_json(doc, args.out)
        return EXIT_OK if complete else EXIT_FAILURE
    if args.command == "curves":
        try:
            grid = CurveGrid(args.grid_min, args.grid_max, args.points, tuple(args.functions))
        except ValueError as e:
            parser.error(str(e))
        try:
            table = cmd_curves(grid, args.raw_radians)
        except SubspaceError as e:
            msg_fail(e)
            return EXIT_FAILURE
        export_csv(table, args.out)
        return EXIT_OK
    if args.command == "verify":
        if args.trials < 1:
            parser.error("--trials must be at least 1")
        return cmd_verify(args, parser)
    return cmd_bound(args, parser)


def run() -> None:
    raise SystemExit(main())
