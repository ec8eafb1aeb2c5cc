"""Command-line entry point.

Subcommands: analyze, fit, project, synth, summarize. Exit status is 0 on success,
2 for invalid input, 3 for numerical failures, 4 for I/O failures and 1 otherwise.
"""

import argparse
import sys
from datetime import date
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from src.data.synth import BoundingBox, synth_frame, write_records_csv
from src.growth.fit import fit_cubic, fit_tanh, project, series_from_rows
from src.growth.phases import counterfactual_gap, phase_summary
from src.models import RunConfig
from src.pipeline.analyze import run_analysis
from src.pipeline.storage import (
    read_fit,
    read_metrics,
    write_fit,
    write_projection,
    write_summary,
)
from src.utils.config import Settings, get_settings
from src.utils.errors import ConfigError, FitConvergenceError, SpreadnetError
from src.utils.logger import get_logger, setup_logging


def _iso_date(value: str) -> date:
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{value}' is not a YYYY-MM-DD date") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spreadnet",
        description="Geodesic threshold networks of infection spread",
    )
    parser.add_argument("--log-level", default=None, help="Overrides SPREADNET_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", help="Daily network metrics and communities")
    analyze.add_argument("--input", type=Path, required=True, help="Infection-record CSV")
    analyze.add_argument("--exclude-states", type=Path, help="File with one state per line")
    analyze.add_argument("--start", type=_iso_date)
    analyze.add_argument("--end", type=_iso_date)
    analyze.add_argument("--lockdown", type=_iso_date)
    analyze.add_argument("--out", type=Path, default=Path("metrics.csv"))
    analyze.add_argument("--communities", type=Path, default=Path("communities.json"))
    analyze.add_argument("--threshold-km", type=float, help="Fixed threshold (what-if mode)")
    analyze.add_argument("--louvain-seed", type=int)
    analyze.add_argument("--louvain-restarts", type=int)
    analyze.add_argument("--jobs", type=int)
    analyze.add_argument("--cc-exclude-low-degree", action="store_true", default=None)
    analyze.add_argument("--eigen-tol", type=float)
    analyze.add_argument("--eigen-max-iter", type=int)
    analyze.add_argument("--eigensolver", choices=["power", "dense"])
    analyze.add_argument("--fiedler-solver", choices=["power", "dense"])
    analyze.add_argument(
        "--no-eigensolver-fallback",
        dest="eigensolver_fallback",
        action="store_false",
        default=None,
    )

    fit = commands.add_parser("fit", help="Fit a growth curve to the daily region count")
    fit.add_argument("--metrics", type=Path, required=True)
    fit.add_argument("--model", choices=["tanh", "cubic"], required=True)
    fit.add_argument(
        "--before-lockdown", action="store_true", help="Use only days before the lockdown"
    )
    fit.add_argument("--lockdown", type=_iso_date)
    fit.add_argument("--origin", type=_iso_date, help="Date with x = 1 (first row by default)")
    fit.add_argument("--init", type=float, nargs=4, metavar=("ALPHA", "BETA", "C", "GAMMA"))
    fit.add_argument("--max-iter", type=int)
    fit.add_argument("--out", type=Path, default=Path("fit.json"))

    proj = commands.add_parser("project", help="Evaluate a fit day by day")
    proj.add_argument("--fit", type=Path, required=True)
    proj.add_argument("--through", type=_iso_date, required=True)
    proj.add_argument("--out", type=Path, default=Path("projection.csv"))

    synth = commands.add_parser("synth", help="Write a seeded synthetic record file")
    synth.add_argument("--n", type=int, required=True)
    synth.add_argument("--start", type=_iso_date, required=True)
    synth.add_argument("--end", type=_iso_date, required=True)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--out", type=Path, default=Path("records.csv"))

    summarize = commands.add_parser("summarize", help="Metric behaviour per lockdown phase")
    summarize.add_argument("--metrics", type=Path, required=True)
    summarize.add_argument("--lockdown", type=_iso_date)
    summarize.add_argument("--lag-days", type=int)
    summarize.add_argument("--fit", type=Path, help="Fit whose gap to the data is reported")
    summarize.add_argument("--out", type=Path, default=Path("summary.json"))

    return parser


def cmd_analyze(args: argparse.Namespace, settings: Settings) -> None:
    try:
        config = RunConfig.from_settings(
            settings,
            input_path=args.input,
            exclusion_path=args.exclude_states,
            start=args.start,
            end=args.end,
            lockdown=args.lockdown,
            metrics_path=args.out,
            communities_path=args.communities,
            threshold_km=args.threshold_km,
            louvain_seed=args.louvain_seed,
            louvain_restarts=args.louvain_restarts,
            jobs=args.jobs,
            cc_exclude_low_degree=args.cc_exclude_low_degree,
            eigen_tol=args.eigen_tol,
            eigen_max_iter=args.eigen_max_iter,
            eigensolver=args.eigensolver,
            fiedler_solver=args.fiedler_solver,
            eigensolver_fallback=args.eigensolver_fallback,
        )
    except ValidationError as e:
        raise ConfigError(f"invalid run configuration: {e}") from e

    result = run_analysis(config)
    get_logger().info(f"run {result.run_id}: analyzed {len(result.rows)} days")


def cmd_fit(args: argparse.Namespace, settings: Settings) -> None:
    rows = read_metrics(args.metrics)
    lockdown = args.lockdown or settings.lockdown_date
    series = series_from_rows(
        rows,
        origin=args.origin,
        before=lockdown if args.before_lockdown else None,
    )
    if args.model == "cubic":
        result = fit_cubic(series)
    else:
        try:
            result = fit_tanh(
                series, init=args.init, max_iter=args.max_iter or settings.fit_max_iter
            )
        except FitConvergenceError as e:
            get_logger().error(f"best tanh parameters so far: {e.params}")
            raise
    write_fit(result, args.out)


def cmd_project(args: argparse.Namespace, settings: Settings) -> None:
    write_projection(project(read_fit(args.fit), args.through), args.out)


def cmd_synth(args: argparse.Namespace, settings: Settings) -> None:
    frame = synth_frame(
        args.n, args.start, args.end, args.seed, BoundingBox.from_settings(settings)
    )
    write_records_csv(frame, args.out)


def cmd_summarize(args: argparse.Namespace, settings: Settings) -> None:
    rows = read_metrics(args.metrics)
    lockdown = args.lockdown or settings.lockdown_date
    lag_days = args.lag_days if args.lag_days is not None else settings.lockdown_lag_days
    phases = phase_summary(rows, lockdown, lag_days)
    gap = counterfactual_gap(read_fit(args.fit), rows) if args.fit else None
    if gap:
        get_logger().info(
            f"counterfactual gap on {gap[-1].date}: model {gap[-1].model:.1f} "
            f"vs observed {gap[-1].observed:.0f}"
        )
    write_summary(phases, args.out, gap=gap)


COMMANDS = {
    "analyze": cmd_analyze,
    "fit": cmd_fit,
    "project": cmd_project,
    "synth": cmd_synth,
    "summarize": cmd_summarize,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit status."""
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(level=args.log_level or settings.log_level, log_file=settings.log_file)
    logger = get_logger()

    try:
        COMMANDS[args.command](args, settings)
    except SpreadnetError as e:
        logger.error(f"{args.command} failed: {e}")
        return e.exit_code
    except Exception as e:
        logger.exception(f"{args.command} failed unexpectedly: {e}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
