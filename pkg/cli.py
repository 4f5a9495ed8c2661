"""Command-line front door for the toolkit: python cli.py <subcommand> [options]."""

import argparse
import asyncio
import logging
import sys
import time
from dataclasses import asdict
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import aiosqlite
import numpy as np

from config import LOG_LEVEL, THREADS
from constants import (
    CURVE_CSV_HEADER,
    DEFAULT_MAX_ITER,
    DEFAULT_TOL_REL,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_VALIDATION,
    MAX_GROUND_SPACING,
    PROFILE_CSV_HEADER,
    REDUCED_ODE_CSV_HEADER,
    ROOT_SCAN_POINTS,
    RUN_LOG_CSV_HEADER,
    SNAPSHOT_CSV_HEADER,
    TRAJECTORY_CSV_HEADER,
)
from database import DB_PATH, init_db, record_manifest
from errors import NumericalFailure, ValidationError
from nonlinearity import Nonlinearity, compute_constants, load_nonlinearity, regime_partition
from pde_solver import (
    BumpShape,
    InitialDatum,
    RunLogHook,
    SnapshotHook,
    SolverConfig,
    bump_offset,
    capped_ground,
    field_from_datum,
    run,
    scaled_bump,
    twin_bump,
)
from steady_states import (
    build_active_state,
    build_compact_bump,
    build_ground_state,
    find_shift_sets,
)
from steady_states.shifts import ground_shift_positions
from threshold import (
    BumpLadder,
    MaxIterExceeded,
    OutcomeClassifier,
    OutcomeKind,
    ThresholdResult,
    bisect_sigma,
    sigma_star_curve,
    verify_spreading,
    verify_vanishing,
)
from transition import manifold_datum, reduced_ode, run_transition_experiment
from utils import RunManifest, configure_logging, write_csv, write_gnuplot_script, write_json

logger = logging.getLogger(__name__)

COMMANDS = ("steady", "simulate", "threshold", "curve", "transition", "reduced-ode", "regime")
DATUMS = ("triangle", "smooth", "plateau", "twin", "ground", "bump-offset", "manifold")
B_DEPENDENT_DATUMS = ("bump-offset", "manifold")

# Extents in units of 1/lambda
PROFILE_EXTENT = 20.0
GROUND_OFFSET = 10.0
MANIFOLD_XI = 8.0

# Arguments that change presentation only; left out of the config snapshot
PRESENTATION_KEYS = {"command", "out_dir", "quiet", "log_level", "no_ledger", "ledger", "threads"}


class UsageError(ValidationError):
    """Bad command-line arguments."""
    pass


class UnknownSubcommand(UsageError):
    pass


class ToolkitArgumentParser(argparse.ArgumentParser):
    """Raises UsageError instead of exiting so dispatch can map it to an exit code."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# ========================================
# Run context
# ========================================

class RunContext:
    """Output directory, manifest and console status for one CLI run."""

    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args
        self.out_dir = Path(args.out_dir)
        config = {k: v for k, v in sorted(vars(args).items()) if k not in PRESENTATION_KEYS}
        self.manifest = RunManifest(subcommand=args.command, config=config)

    def path(self, name: str) -> Path:
        return self.out_dir / name

    def status(self, message: str, icon: str = "✅") -> None:
        if not self.args.quiet:
            print(f"{icon} {message}")

    def emit_csv(self, name: str, header, rows, announce: bool = True) -> Path:
        path = write_csv(self.path(name), header, rows)
        self.manifest.add_output(path)
        if announce:
            self.status(f"Wrote {path}")
        return path

    def emit_json(self, name: str, payload: Dict[str, Any]) -> Path:
        path = write_json(self.path(name), payload)
        self.manifest.add_output(path)
        self.status(f"Wrote {path}")
        return path

    def emit_file(self, path: Path) -> Path:
        self.manifest.add_output(path)
        self.status(f"Wrote {path}")
        return path

    def load(self) -> Nonlinearity:
        f = load_nonlinearity(self.args.f_config)
        self.manifest.config["nonlinearity"] = f.describe()
        logger.info("nonlinearity: %s alpha=%.6g theta=%.12g lambda=%.6g", f.kind, f.alpha, f.theta, f.lam)
        return f

    def solver(self, f: Nonlinearity) -> SolverConfig:
        cfg = SolverConfig(dx=self.args.dx, dt=self.args.dt, max_t=self.args.tmax).resolved(f)
        self.manifest.grid = cfg.to_dict()
        return cfg

    def finish(self, exit_code: int, wall_time: float) -> None:
        self.manifest.exit_code = exit_code
        self.manifest.wall_time = wall_time
        if self.manifest.outputs:
            self.manifest.write(self.path(f"{self.args.command}.manifest.json"))
        if not self.args.no_ledger:
            try:
                run_id = asyncio.run(_record(self.manifest, self.args.ledger))
                logger.debug("ledger entry %d", run_id)
            except (aiosqlite.Error, OSError) as e:
                print(f"⚠️ Run ledger not updated: {e}", file=sys.stderr)


async def _record(manifest: RunManifest, db_path: Optional[str]) -> int:
    await init_db(db_path)
    return await record_manifest(manifest, db_path)


# ========================================
# Initial data
# ========================================

def build_datum(args: argparse.Namespace, f: Nonlinearity, b: float) -> InitialDatum:
    """Unit-scale datum named by --datum; sigma is applied by the caller."""
    kind = args.datum
    if kind in ("triangle", "smooth", "plateau"):
        return scaled_bump(BumpShape(kind), args.h)
    if kind == "twin":
        return twin_bump(BumpShape.SMOOTH, args.h, args.gap)
    if kind == "bump-offset":
        m = args.m if args.m is not None else 0.5 * (f.theta + 1.0)
        return bump_offset(f, m, b, BumpShape.SMOOTH, args.h)
    V = build_ground_state(f, PROFILE_EXTENT / f.lam)
    if kind == "ground":
        z0 = args.z0 if args.z0 is not None else GROUND_OFFSET / f.lam
        rho = args.rho if args.rho is not None else GROUND_OFFSET / f.lam
        return capped_ground(V, z0, rho)
    xi = args.xi if args.xi is not None else MANIFOLD_XI / f.lam
    return manifold_datum(V, b, xi)


# ========================================
# Subcommands
# ========================================

def cmd_regime(args: argparse.Namespace, ctx: RunContext) -> int:
    f = ctx.load()
    report = regime_partition(f, args.b, args.scan_points)
    shifts = ground_shift_positions(f, report.roots, 0.0)
    print(f"{report.label.value}  (b={args.b:g}, g(0+)=1/lambda={report.g_limit:.12g}, min g={report.g_min:.12g})")
    if report.oscillation_flag:
        print("⚠️ b - g(s) changes sign arbitrarily close to 0 on the scan grid; label is provisional")
    if shifts:
        print(f"{'s0':>22}  {'z':>22}")
        for s0, z in zip(report.roots, shifts):
            print(f"{s0:22.15g}  {z:22.15g}")
    else:
        print("no ground shifts")
    ctx.emit_json("regime.json", {
        "regime": report.to_dict(),
        "ground_shifts": [{"s0": s0, "z": z} for s0, z in zip(report.roots, shifts)],
    })
    return EXIT_OK


def cmd_steady(args: argparse.Namespace, ctx: RunContext) -> int:
    f = ctx.load()
    extent = args.z_max if args.z_max is not None else PROFILE_EXTENT / f.lam
    n = args.n or int(np.ceil(extent * f.lam / MAX_GROUND_SPACING))
    if args.kind == "ground":
        profile = build_ground_state(f, extent, n)
    elif args.kind == "active":
        profile = build_active_state(f, extent, n)
    else:
        if args.m is None:
            raise UsageError("--kind bump needs --m")
        profile = build_compact_bump(f, args.m, n)
    ctx.manifest.grid = {"kind": args.kind, "extent": extent, "points": len(profile.grid)}
    ctx.emit_csv(args.out, PROFILE_CSV_HEADER, profile.to_rows())

    report: Dict[str, Any] = {
        "kind": profile.kind.value,
        "b": args.b,
        "residual": profile.residual(),
        "first_integral_error": profile.first_integral_error(),
        "constants": compute_constants(f).to_dict(),
    }
    if args.kind == "ground":
        vstar = build_active_state(f, extent, n)
        report["shift_sets"] = find_shift_sets(f, profile, vstar, args.b, args.scan_points).to_dict()
    if args.kind == "bump":
        report["half_width"] = profile.half_width
    ctx.emit_json(str(Path(args.out).with_suffix(".json")), report)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace, ctx: RunContext) -> int:
    f = ctx.load()
    cfg = ctx.solver(f)
    datum = build_datum(args, f, args.b).scaled(args.sigma)
    field = field_from_datum(datum, args.b, cfg)

    snapshots = SnapshotHook(args.snap_every)
    run_log = RunLogHook(args.log_every or args.snap_every, f)
    hooks = [snapshots, run_log]
    classifier = None
    if args.classify:
        classifier = OutcomeClassifier(f, BumpLadder.build(f))
        hooks.append(classifier)
    record = run(field, cfg, f, hooks)

    for k, snap in enumerate(snapshots.snapshots):
        ctx.emit_csv(f"snapshot_{k:04d}.csv", SNAPSHOT_CSV_HEADER, zip(snap.x, snap.values), announce=False)
    ctx.status(f"Wrote {len(snapshots.snapshots)} snapshots to {ctx.out_dir}")
    ctx.emit_csv("run_log.csv", RUN_LOG_CSV_HEADER, run_log.rows)

    summary: Dict[str, Any] = {"datum": datum.describe(), "run": record.to_dict()}
    if classifier is not None:
        outcome = classifier.outcome
        summary["outcome"] = None if outcome is None else outcome.to_dict()
        ctx.status(f"Outcome: {outcome.kind.value if outcome else 'Undecided'} at t={record.field.t:.6g}")
    ctx.emit_json("run.json", summary)
    return EXIT_OK


def _verification(result: ThresholdResult, cfg: SolverConfig, f: Nonlinearity) -> Dict[str, Any]:
    lo, hi = result.endpoint_outcomes
    checks: Dict[str, Any] = {}
    if lo.kind is OutcomeKind.VANISHING:
        checks["lower"] = asdict(verify_vanishing(lo, cfg, f))
    if hi.kind is OutcomeKind.SPREADING:
        checks["upper"] = asdict(verify_spreading(hi, f))
    return checks


def cmd_threshold(args: argparse.Namespace, ctx: RunContext) -> int:
    f = ctx.load()
    cfg = ctx.solver(f)
    datum = build_datum(args, f, args.b)
    code = EXIT_OK
    try:
        result = bisect_sigma(
            datum, args.b, cfg, f, tol_rel=args.tol_rel, max_iter=args.max_iter,
            heuristic=args.heuristic, strict=args.strict,
        )
    except MaxIterExceeded as e:
        print(f"❌ {e}", file=sys.stderr)
        result, code = e.result, EXIT_NUMERICAL

    payload = result.to_dict()
    if args.verify:
        payload["verification"] = _verification(result, cfg, f)
    ctx.emit_json(args.out, payload)
    icon = "✅" if code == EXIT_OK and result.status.value == "converged" else "⚠️"
    ctx.status(
        f"sigma* in [{result.sigma_lo:.17g}, {result.sigma_hi:.17g}] "
        f"(relative width {result.relative_width:.3e}, {result.status.value})",
        icon,
    )
    return code


def cmd_curve(args: argparse.Namespace, ctx: RunContext) -> int:
    if args.datum in B_DEPENDENT_DATUMS:
        raise UsageError(f"--datum {args.datum} depends on b; the curve needs one fixed datum")
    f = ctx.load()
    cfg = ctx.solver(f)
    datum = build_datum(args, f, 0.0)
    curve = sigma_star_curve(
        datum, args.b_list, cfg, f, threads=args.threads,
        tol_rel=args.tol_rel, max_iter=args.max_iter,
    )
    ctx.emit_csv("curve.csv", CURVE_CSV_HEADER, curve.rows())
    ctx.emit_json("curve.json", curve.to_dict())
    if curve.monotone:
        ctx.status("sigma*(b) is nonincreasing within bracket widths")
    else:
        ctx.status("sigma*(b) is NOT nonincreasing within bracket widths", "⚠️")
    return EXIT_OK


def cmd_transition(args: argparse.Namespace, ctx: RunContext) -> int:
    f = ctx.load()
    cfg = ctx.solver(f)
    datum = build_datum(args, f, args.b)
    result = run_transition_experiment(
        f, args.b, datum, cfg, iterations=args.iterations, track_interval=args.track_every,
    )
    trajectory_path = ctx.emit_csv("trajectory.csv", TRAJECTORY_CSV_HEADER, result.trajectory.samples)
    ctx.emit_json("transition.json", result.to_dict())
    if args.gnuplot:
        slope = intercept = None
        if result.fit is not None:
            slope, intercept = result.fit.slope, result.fit.intercept
        script = write_gnuplot_script(ctx.path("xi_vs_log_t.gp"), trajectory_path, slope, intercept)
        ctx.emit_file(script)
    if result.fit is not None:
        ctx.status(
            f"xi ~ {result.fit.slope:.6g} ln t + {result.fit.intercept:.6g} "
            f"(predicted slope {result.fit.predicted_slope:.6g})"
        )
    else:
        ctx.status(f"No log-law fit: {result.fit_error}", "⚠️")
    return EXIT_OK


def cmd_reduced_ode(args: argparse.Namespace, ctx: RunContext) -> int:
    f = ctx.load()
    y0 = args.y0 if args.y0 is not None else MANIFOLD_XI / f.lam
    result = reduced_ode(f, args.b, y0, args.t_end, args.samples)
    ctx.manifest.grid = {"samples": args.samples, "t_end": args.t_end}
    ctx.emit_csv("reduced_ode.csv", REDUCED_ODE_CSV_HEADER, result.rows())
    ctx.emit_json("reduced_ode.json", result.to_dict())
    return EXIT_OK


HANDLERS: Dict[str, Callable[[argparse.Namespace, RunContext], int]] = {
    "steady": cmd_steady,
    "simulate": cmd_simulate,
    "threshold": cmd_threshold,
    "curve": cmd_curve,
    "transition": cmd_transition,
    "reduced-ode": cmd_reduced_ode,
    "regime": cmd_regime,
}


# ========================================
# Parser
# ========================================

def _b_list(text: str) -> List[float]:
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e
    if not values or min(values) < 0.0:
        raise argparse.ArgumentTypeError("b values must be >= 0")
    return values


def _nonnegative(text: str) -> float:
    value = float(text)
    if value < 0.0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def build_parser() -> ToolkitArgumentParser:
    parser = ToolkitArgumentParser(
        prog="cli.py",
        description="Half-line bistable reaction-diffusion toolkit with a Robin boundary.",
    )

    common = ToolkitArgumentParser(add_help=False)
    common.add_argument("--f-config", required=True, help="TOML file describing the nonlinearity.")
    common.add_argument("--out-dir", default="out", help="Directory for outputs and the manifest (default: out).")
    common.add_argument("--threads", type=int, default=THREADS, help="Worker threads for the curve subcommand.")
    common.add_argument("--seed", type=int, default=None, help="Reserved; all algorithms are deterministic.")
    common.add_argument("--quiet", action="store_true", help="Suppress status lines and info logging.")
    common.add_argument("--log-level", default=LOG_LEVEL, help=f"Logging level (default: {LOG_LEVEL}).")
    common.add_argument("--no-ledger", action="store_true", help="Do not append the run to the ledger.")
    common.add_argument("--ledger", default=DB_PATH, help=f"Ledger database (default: {DB_PATH}).")

    robin = ToolkitArgumentParser(add_help=False)
    robin.add_argument("--b", type=_nonnegative, default=0.0, help="Robin parameter b >= 0 (default: 0).")

    solver = ToolkitArgumentParser(add_help=False)
    solver.add_argument("--dx", type=float, default=SolverConfig.dx, help="Grid spacing.")
    solver.add_argument("--dt", type=float, default=SolverConfig.dt, help="Time step.")
    solver.add_argument("--tmax", type=float, default=None, help="Final time (default: 2000/lambda^2).")

    datum = ToolkitArgumentParser(add_help=False)
    datum.add_argument("--datum", choices=DATUMS, default="triangle", help="Initial datum family (default: triangle).")
    datum.add_argument("--h", type=float, default=1.0, help="Bump width.")
    datum.add_argument("--gap", type=float, default=1.0, help="Gap between the twin bumps.")
    datum.add_argument("--m", type=float, default=None, help="Compact-bump level in (theta, 1) for bump-offset.")
    datum.add_argument("--z0", type=float, default=None, help="Ground-state center for --datum ground.")
    datum.add_argument("--rho", type=float, default=None, help="Cap width for --datum ground.")
    datum.add_argument("--xi", type=float, default=None, help="Manifold position for --datum manifold.")

    bisection = ToolkitArgumentParser(add_help=False)
    bisection.add_argument("--tol-rel", type=float, default=DEFAULT_TOL_REL, help="Relative bracket width target.")
    bisection.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER, help="Bisection iteration cap.")

    sub = parser.add_subparsers(dest="command", metavar="subcommand", required=True)

    p = sub.add_parser("regime", parents=[common, robin], help="Classify b and list the ground shifts.")
    p.add_argument("--scan-points", type=int, default=ROOT_SCAN_POINTS)

    p = sub.add_parser("steady", parents=[common, robin], help="Tabulate a steady state (z, v, vprime).")
    p.add_argument("--kind", choices=("ground", "active", "bump"), default="ground")
    p.add_argument("--z-max", type=float, default=None, help="Half extent of the table (default: 20/lambda).")
    p.add_argument("--n", type=int, default=None, help="Intervals per half.")
    p.add_argument("--m", type=float, default=None, help="Bump level for --kind bump.")
    p.add_argument("--scan-points", type=int, default=ROOT_SCAN_POINTS)
    p.add_argument("--out", default="steady.csv", help="Profile CSV name inside --out-dir.")

    p = sub.add_parser("simulate", parents=[common, robin, solver, datum], help="Run the PDE from sigma * phi.")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--snap-every", type=float, default=10.0, help="Time between snapshot CSVs.")
    p.add_argument("--log-every", type=float, default=None, help="Time between run-log rows (default: --snap-every).")
    p.add_argument("--classify", action="store_true", help="Stop at the first spreading/vanishing certificate.")

    p = sub.add_parser("threshold", parents=[common, robin, solver, datum, bisection], help="Bisect sigma*.")
    p.add_argument("--heuristic", action="store_true", help="Break Undecided midpoints by the final sup.")
    p.add_argument("--strict", action="store_true", help="Exit 3 when --max-iter is hit.")
    p.add_argument("--verify", action="store_true", help="Re-check both endpoint certificates.")
    p.add_argument("--out", default="threshold.json", help="Result JSON name inside --out-dir.")

    p = sub.add_parser("curve", parents=[common, solver, datum, bisection], help="sigma*(b) over a list of b.")
    p.add_argument("--b-list", type=_b_list, default=[0.0, 0.5, 1.0, 2.0, 4.0], help="Comma-separated b values.")

    p = sub.add_parser("transition", parents=[common, robin, solver, datum], help="Near-threshold pulse drift experiment.")
    p.add_argument("--iterations", type=int, default=40, help="Bisection iterations before the tracked run.")
    p.add_argument("--track-every", type=float, default=0.5, help="Time between pulse samples.")
    p.add_argument("--gnuplot", action="store_true", help="Also write a gnuplot script for xi against ln t.")

    p = sub.add_parser("reduced-ode", parents=[common, robin], help="Integrate the reduced drift law.")
    p.add_argument("--y0", type=float, default=None, help="Initial position (default: 8/lambda).")
    p.add_argument("--t-end", type=float, default=1e4)
    p.add_argument("--samples", type=int, default=400)

    return parser


# ========================================
# Dispatch
# ========================================

def dispatch(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run one subcommand, write its manifest; returns the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
            parser.print_usage(sys.stderr)
            raise UnknownSubcommand(f"unknown subcommand {argv[0]!r}; choose from {', '.join(COMMANDS)}")
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    configure_logging(args.log_level, args.quiet)
    ctx = RunContext(args)
    started = time.perf_counter()
    try:
        code = HANDLERS[args.command](args, ctx)
    except ValidationError as e:
        print(f"❌ {e}", file=sys.stderr)
        code = EXIT_VALIDATION
    except NumericalFailure as e:
        print(f"❌ {e}", file=sys.stderr)
        code = EXIT_NUMERICAL
    ctx.finish(code, time.perf_counter() - started)
    return code


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
