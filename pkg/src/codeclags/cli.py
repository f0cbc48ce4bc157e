"""
Command-line entry point: ``codec-lags {select,pacf,simulate,experiment,bench}``.

Exit codes: 0 ok, 2 input error, 3 degenerate data, 4 flagged experiment
cells, 5 diverged simulation.
"""

import argparse
import json
import logging
import statistics
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import ValidationError

from codeclags.config import (
    BENCH_TRIALS,
    DEFAULT_ALPHA,
    DEFAULT_BURN_IN,
    DEFAULT_SEED,
    TOOL_VERSION,
    default_log_level,
    default_parallelism,
)
from codeclags.dependence import codec_unconditional, xi_coefficient
from codeclags.exceptions import CodecLagsError, InputError, InvalidInput
from codeclags.experiment import (
    emit_report,
    format_table,
    load_scenarios,
    run_scenarios,
    study_scenarios,
)
from codeclags.ingest import load_benchmark, load_series_csv
from codeclags.lagselect import (
    estimate_order,
    foci_select,
    schwert_max_lag,
)
from codeclags.models.experiment import Scenario
from codeclags.models.selection import OrderEstimates
from codeclags.models.series import TimeSeries
from codeclags.pacf import compute_pacf, significant_lags
from codeclags.preprocess import apply_preprocessing, log_transform
from codeclags.series import build_lag_matrix
from codeclags.simulate import export_csv, simulate
from codeclags.types import (
    AbsentPolicy,
    BenchmarkName,
    BenchOp,
    CorrelationMethod,
    Measure,
    ModelKind,
    Preprocessing,
    ReportFormat,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FLAGGED = 4

PREPROCESS_ALIASES = {
    "raw": Preprocessing.RAW,
    "diff": Preprocessing.DIFFERENCED,
    "differenced": Preprocessing.DIFFERENCED,
    "decompose": Preprocessing.DECOMPOSED,
    "decomposed": Preprocessing.DECOMPOSED,
}


def _sizes(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _resolved_config(args: argparse.Namespace) -> Dict[str, Any]:
    config = {}
    for key, value in sorted(vars(args).items()):
        if key == "handler":
            continue
        if isinstance(value, Path):
            value = str(value)
        elif hasattr(value, "value"):
            value = value.value
        config[key] = value
    return config


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
    logger.info(f"Wrote {out}")


def _dump(document: Dict[str, Any], out: Optional[Path]) -> None:
    _write(json.dumps(document, indent=2, sort_keys=True) + "\n", out)


def _load_input(args: argparse.Namespace) -> TimeSeries:
    if args.benchmark and args.input:
        raise InvalidInput("Pass either an input CSV or --benchmark, not both")
    if args.benchmark:
        series = load_benchmark(args.benchmark)
    elif args.input:
        series = load_series_csv(args.input, value_column=args.column, period=args.period)
    else:
        raise InvalidInput("An input CSV or --benchmark is required")
    if args.log:
        series = log_transform(series)
    period = args.period or series.period
    return apply_preprocessing(series, PREPROCESS_ALIASES[args.preprocess], period)


def _orders(estimates: OrderEstimates) -> Dict[str, Optional[int]]:
    return {"p1": estimates.p1, "p2": estimates.p2, "p3": estimates.p3}


def cmd_select(args: argparse.Namespace) -> int:
    series = _load_input(args)
    h = args.max_lag or schwert_max_lag(len(series))
    measure = Measure(args.measure)
    document: Dict[str, Any] = {"version": TOOL_VERSION, "config": _resolved_config(args)}

    if measure is Measure.CODEC:
        result = foci_select(
            build_lag_matrix(series, h), seed=args.seed, full_ranking=args.full_ranking
        )
        document.update(
            h_max=result.h_max,
            ordered_lags=result.ordered_lags,
            step_estimates=result.step_estimates,
            stop_index=result.stop_index,
            stop_reason=result.stop_reason,
            **_orders(estimate_order(result)),
        )
        if result.full_ranking is not None:
            document["full_ranking"] = [
                ranked.model_dump(mode="json") for ranked in result.full_ranking
            ]
    else:
        pacf = compute_pacf(series, h, method=measure.value, alpha=args.alpha)
        lags = significant_lags(pacf)
        document.update(
            h_max=h,
            significant_lags=lags,
            **_orders(OrderEstimates.from_lags(lags)),
        )
    _dump(document, args.out)
    return EXIT_OK


def cmd_pacf(args: argparse.Namespace) -> int:
    series = _load_input(args)
    h = args.max_lag or schwert_max_lag(len(series))
    pacf = compute_pacf(series, h, method=args.method, alpha=args.alpha)
    lags = significant_lags(pacf)
    document = {
        "version": TOOL_VERSION,
        "config": _resolved_config(args),
        "h_max": h,
        "n_effective": pacf.n_effective,
        "threshold": pacf.threshold,
        "pacf": pacf.pacf.tolist(),
        "significant_lags": lags,
        **_orders(OrderEstimates.from_lags(lags)),
    }
    _dump(document, args.out)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    run = simulate(
        args.model,
        args.n,
        seed=args.seed,
        burn_in=args.burn_in,
        garch_omega=args.garch_omega,
    )
    if args.out is None:
        frame = pd.DataFrame({"value": run.series.values})
        _write(frame.to_csv(index=False, lineterminator="\n"), None)
        return EXIT_OK
    export_csv(run, args.out)
    metadata = {"version": TOOL_VERSION, "config": _resolved_config(args)}
    _dump(metadata, args.out.with_name(args.out.name + ".meta.json"))
    return EXIT_OK


def _experiment_scenarios(args: argparse.Namespace) -> List[Scenario]:
    if args.scenario:
        scenarios = load_scenarios(args.scenario)
        overrides = {}
        if args.reps:
            overrides["replications"] = args.reps
        if args.sizes:
            overrides["sizes"] = tuple(args.sizes)
        if args.base_seed is not None:
            overrides["base_seed"] = args.base_seed
    else:
        scenarios = study_scenarios(
            full=args.table2_full,
            replications=args.reps,
            sizes=args.sizes,
            base_seed=args.base_seed or 0,
        )
        overrides = {}
    if args.absent_policy is not None:
        overrides["absent_policy"] = args.absent_policy
    return [Scenario(**{**s.model_dump(), **overrides}) for s in scenarios]


def cmd_experiment(args: argparse.Namespace) -> int:
    scenarios = _experiment_scenarios(args)
    report = run_scenarios(scenarios, parallelism=args.parallelism)
    report = report.model_copy(
        update={"metadata": {**report.metadata, "config": _resolved_config(args)}}
    )

    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        _write(emit_report(report, ReportFormat.CSV), args.out / "report.csv")
        _write(emit_report(report, ReportFormat.JSON), args.out / "report.json")
    sys.stdout.write(format_table(report) + "\n")

    if report.flagged:
        logger.error(f"{len(report.flagged)} cell(s) exceed the failure threshold")
        return EXIT_FLAGGED
    return EXIT_OK


def _time_once(op: BenchOp, x: np.ndarray, y: np.ndarray, seed: int) -> float:
    started = time.perf_counter()
    if op is BenchOp.XI:
        xi_coefficient(x, y, seed=seed)
    else:
        codec_unconditional(y, x, seed=seed)
    return time.perf_counter() - started


def bench(op: BenchOp, sizes: List[int], seed: int = DEFAULT_SEED, trials: int = BENCH_TRIALS):
    """Median wall-clock runtime of ``op`` on independent normal pairs of each size."""
    op = BenchOp(op)
    rows = []
    for n in sizes:
        rng = np.random.default_rng([seed, n])
        x, y = rng.standard_normal(n), rng.standard_normal(n)
        timings = [_time_once(op, x, y, seed) for _ in range(trials)]
        rows.append({"n": n, "median_seconds": statistics.median(timings)})
        logger.info(f"bench {op.value} n={n}: {rows[-1]['median_seconds']:.4f}s")
    return rows


def cmd_bench(args: argparse.Namespace) -> int:
    rows = bench(args.op, args.sizes, seed=args.seed, trials=args.trials)
    if args.format is ReportFormat.CSV:
        frame = pd.DataFrame(rows, columns=["n", "median_seconds"])
        _write(frame.to_csv(index=False, lineterminator="\n"), args.out)
        return EXIT_OK
    _dump({"version": TOOL_VERSION, "config": _resolved_config(args), "rows": rows}, args.out)
    return EXIT_OK


def _add_input_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", nargs="?", type=Path, help="CSV file with a header row")
    bundled = [name.value for name in BenchmarkName if name is not BenchmarkName.CUSTOM]
    parser.add_argument("--benchmark", choices=bundled)
    parser.add_argument("--column", default="value", help="value column (default: value)")
    parser.add_argument("--period", type=int, help="seasonal period of the input")
    parser.add_argument(
        "--preprocess", choices=sorted(PREPROCESS_ALIASES), default="raw"
    )
    parser.add_argument("--log", action="store_true", help="natural log of the series first")
    parser.add_argument("--max-lag", type=int, help="largest lag (default: Schwert's rule)")
    parser.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    parser.add_argument("--out", type=Path, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codec-lags",
        description="Autoregressive order selection with CODEC/FOCI and PACF baselines.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {TOOL_VERSION}")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)

    select = subparsers.add_parser("select", help="select lags of one series")
    _add_input_arguments(select)
    select.add_argument("--measure", choices=[m.value for m in Measure], default="codec")
    select.add_argument("--seed", type=int, default=DEFAULT_SEED)
    select.add_argument("--full-ranking", action="store_true")
    select.set_defaults(handler=cmd_select)

    pacf = subparsers.add_parser("pacf", help="partial autocorrelations and significant lags")
    _add_input_arguments(pacf)
    pacf.add_argument(
        "--method", choices=[m.value for m in CorrelationMethod], default="pearson"
    )
    pacf.set_defaults(handler=cmd_pacf)

    sim = subparsers.add_parser("simulate", help="simulate one benchmark process")
    sim.add_argument("--model", required=True, choices=[k.value for k in ModelKind])
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sim.add_argument("--burn-in", type=int, default=DEFAULT_BURN_IN)
    sim.add_argument("--garch-omega", type=float, default=0.0)
    sim.add_argument("--out", type=Path, help="CSV path (default: stdout)")
    sim.set_defaults(handler=cmd_simulate)

    experiment = subparsers.add_parser("experiment", help="run the RMSE study")
    source = experiment.add_mutually_exclusive_group(required=True)
    source.add_argument("--scenario", type=Path, help="JSON scenario document")
    source.add_argument("--table2-desk", action="store_true")
    source.add_argument("--table2-full", action="store_true")
    experiment.add_argument("--reps", type=int)
    experiment.add_argument("--sizes", type=_sizes)
    experiment.add_argument("--base-seed", type=int)
    experiment.add_argument(
        "--absent-policy", type=AbsentPolicy, choices=list(AbsentPolicy)
    )
    experiment.add_argument("--parallelism", type=int)
    experiment.add_argument("--out", type=Path, help="report directory")
    experiment.set_defaults(handler=cmd_experiment)

    bench_parser = subparsers.add_parser("bench", help="time xi or CODEC")
    bench_parser.add_argument("--op", type=BenchOp, choices=list(BenchOp), default=BenchOp.XI)
    bench_parser.add_argument("--sizes", type=_sizes, default=[100_000, 200_000])
    bench_parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    bench_parser.add_argument("--trials", type=int, default=BENCH_TRIALS)
    bench_parser.add_argument(
        "--format", type=ReportFormat, choices=list(ReportFormat), default=ReportFormat.JSON
    )
    bench_parser.add_argument("--out", type=Path)
    bench_parser.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = "DEBUG" if args.verbose else default_log_level()
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        if getattr(args, "parallelism", None) is None and args.command == "experiment":
            args.parallelism = default_parallelism()
        return args.handler(args)
    except ValidationError as e:
        logger.error(f"Invalid input: {e}")
        return InputError.exit_code
    except CodecLagsError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
