"""
Monte Carlo harness: replications x sizes x measures x estimators -> RMSE.

Every replication is an independent work unit whose seed derives only from
the scenario and the replication index, so reports do not depend on the
number of workers.
"""

import io
import json
import logging
import warnings
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
import pendulum
from pydantic import TypeAdapter, ValidationError

from codeclags.config import (
    DESK_REPLICATIONS,
    DESK_SIZES,
    FAILURE_FLAG_FRACTION,
    FULL_REPLICATIONS,
    FULL_SIZES,
    RESEED_STRIDE,
    TOOL_VERSION,
    default_parallelism,
)
from codeclags.exceptions import DegenerateError, Diverged, InsufficientData, ScenarioError
from codeclags.lagselect import (
    estimate_order,
    foci_select,
    schwert_max_lag,
    select_lags_pacf,
)
from codeclags.models.experiment import ReplicationOutcome, RmseCell, RmseReport, Scenario
from codeclags.models.selection import OrderEstimates
from codeclags.models.series import TimeSeries
from codeclags.models.simulation import get_model_spec
from codeclags.preprocess import apply_preprocessing
from codeclags.series import build_lag_matrix
from codeclags.simulate import simulate
from codeclags.types import (
    AbsentPolicy,
    CorrelationMethod,
    Estimator,
    Measure,
    ModelKind,
    Preprocessing,
    ReportFormat,
)

logger = logging.getLogger(__name__)

REPORT_COLUMNS = [
    "model",
    "preprocessing",
    "size",
    "measure",
    "estimator",
    "rmse",
    "n_reps",
    "n_absent",
]

STUDY_COLUMNS = [
    (ModelKind.SARIMA_2_1_1x2_0_2_52, Preprocessing.RAW),
    (ModelKind.SARIMA_2_1_1x2_0_2_52, Preprocessing.DECOMPOSED),
    (ModelKind.ARIMA_3_1_1, Preprocessing.DIFFERENCED),
    (ModelKind.ARIMA_3_1_1, Preprocessing.RAW),
    (ModelKind.ARMA_3_1, Preprocessing.RAW),
    (ModelKind.NLARMA_2_2, Preprocessing.RAW),
    (ModelKind.SETAR_2_2_2_1, Preprocessing.RAW),
    (ModelKind.ARIMA_GARCH_1_1_1_1_1, Preprocessing.RAW),
    (ModelKind.NLAR_4, Preprocessing.RAW),
    (ModelKind.AR_8, Preprocessing.RAW),
    (ModelKind.SARI_5_1_0x3_0_0_12, Preprocessing.RAW),
    (ModelKind.SARI_5_1_0x3_0_0_12, Preprocessing.DECOMPOSED),
    (ModelKind.ARI_6_1_0, Preprocessing.DIFFERENCED),
    (ModelKind.ARI_6_1_0, Preprocessing.RAW),
]


def rmse(
    estimates: Sequence[Optional[int]],
    true_p: int,
    absent_policy: AbsentPolicy = AbsentPolicy.ZERO,
) -> float:
    """
    Root mean square error of order estimates against ``true_p``.

    Absent estimates (``None``) score as 0 under ``AbsentPolicy.ZERO`` and are
    dropped under ``AbsentPolicy.SKIP``; when every estimate is absent, SKIP
    falls back to scoring them as 0.
    """
    if len(estimates) == 0:
        raise InsufficientData("RMSE needs at least one estimate")
    absent_policy = AbsentPolicy(absent_policy)
    present = [p for p in estimates if p is not None]
    if absent_policy is AbsentPolicy.SKIP and present:
        scored = present
    else:
        scored = [0 if p is None else p for p in estimates]
    errors = np.asarray(scored, dtype=float) - true_p
    return float(np.sqrt(np.mean(errors**2)))


def _estimate(series: TimeSeries, measure: Measure, h: int, seed: int, alpha: float):
    if measure is Measure.CODEC:
        return estimate_order(foci_select(build_lag_matrix(series, h), seed=seed))
    return select_lags_pacf(series, CorrelationMethod(measure.value), alpha, max_lag=h)


def run_replication(scenario: Scenario, size: int, replication: int) -> ReplicationOutcome:
    """
    Simulate, preprocess and estimate one replication.

    The seed is ``base_seed + replication``. A diverged path is retried once
    with ``base_seed + replication + 1_000_003 * size`` and recorded as a
    failure if it diverges again.
    """
    seeds = [
        scenario.base_seed + replication,
        scenario.base_seed + replication + RESEED_STRIDE * size,
    ]
    spec = scenario.spec
    for attempt, seed in enumerate(seeds):
        try:
            run = simulate(
                spec,
                size,
                seed=seed,
                burn_in=scenario.burn_in,
                garch_omega=scenario.garch_omega,
            )
        except Diverged as e:
            if attempt < len(seeds) - 1:
                logger.warning(
                    f"{scenario.name} n={size} replication {replication} diverged at "
                    f"step {e.step}, retrying with seed {seeds[attempt + 1]} "
                    f"(attempt {attempt + 2}/{len(seeds)})"
                )
                continue
            return ReplicationOutcome(
                size=size,
                replication=replication,
                seed=seed,
                reseeded=True,
                failed=True,
                reason=str(e),
            )

        series = apply_preprocessing(run.series, scenario.preprocessing, spec.period)
        h = schwert_max_lag(size)
        estimates: Dict[Measure, OrderEstimates] = {}
        for measure in scenario.measures:
            try:
                estimates[measure] = _estimate(series, measure, h, seed, scenario.alpha)
            except DegenerateError as e:
                logger.warning(
                    f"{scenario.name} n={size} replication {replication}: "
                    f"{measure.value} scored as absent ({e})"
                )
                estimates[measure] = OrderEstimates()
        return ReplicationOutcome(
            size=size,
            replication=replication,
            seed=seed,
            estimates=estimates,
            reseeded=attempt > 0,
        )


def _collect(scenario: Scenario, parallelism: int) -> List[ReplicationOutcome]:
    tasks = [(size, r) for size in scenario.sizes for r in range(scenario.replications)]
    if parallelism == 1:
        return [run_replication(scenario, size, r) for size, r in tasks]

    outcomes = []
    with ProcessPoolExecutor(max_workers=parallelism) as executor:
        futures = {
            executor.submit(run_replication, scenario, size, r): (size, r)
            for size, r in tasks
        }
        for future in as_completed(futures):
            outcomes.append(future.result())
    return sorted(outcomes, key=lambda outcome: (outcome.size, outcome.replication))


def _cells_for_size(
    scenario: Scenario, size: int, outcomes: List[ReplicationOutcome]
) -> List[RmseCell]:
    true_p = scenario.spec.true_p
    succeeded = [outcome for outcome in outcomes if not outcome.failed]
    n_failed = len(outcomes) - len(succeeded)
    flagged = n_failed > FAILURE_FLAG_FRACTION * len(outcomes)

    cells = []
    for measure in scenario.measures:
        for estimator in Estimator:
            values = [outcome.estimates[measure].get(estimator) for outcome in succeeded]
            present = [value for value in values if value is not None]
            cells.append(
                RmseCell(
                    model=scenario.model,
                    preprocessing=scenario.preprocessing,
                    size=size,
                    measure=measure,
                    estimator=estimator,
                    rmse=rmse(values, true_p, scenario.absent_policy) if values else None,
                    n_reps=len(values),
                    n_absent=len(values) - len(present),
                    n_failed=n_failed,
                    flagged=flagged,
                    distribution=dict(sorted(Counter(present).items())),
                )
            )
    return cells


def _scenario_metadata(scenario: Scenario) -> dict:
    return {
        **scenario.model_dump(mode="json"),
        "true_p": scenario.spec.true_p,
        "h_max": {str(size): schwert_max_lag(size) for size in scenario.sizes},
        "seeds": {
            "base_seed": scenario.base_seed,
            "replication_seed": "base_seed + replication",
            "reseed": f"base_seed + replication + {RESEED_STRIDE} * size",
        },
    }


def run_scenario(scenario: Scenario, parallelism: Optional[int] = None) -> RmseReport:
    """
    Run every (size, replication) of ``scenario`` and score p1, p2 and p3 of
    each measure against the model's true order.

    A cell whose replications failed more than 10% of the time is flagged.
    """
    parallelism = parallelism or default_parallelism()
    started = pendulum.now("UTC")
    logger.info(
        f"Running {scenario.name}: sizes {list(scenario.sizes)}, "
        f"{scenario.replications} replications, {parallelism} worker(s)"
    )
    outcomes = _collect(scenario, parallelism)

    cells = []
    for size in scenario.sizes:
        size_outcomes = [outcome for outcome in outcomes if outcome.size == size]
        size_cells = _cells_for_size(scenario, size, size_outcomes)
        cells.extend(size_cells)
        elapsed = (pendulum.now("UTC") - started).in_words()
        for cell in size_cells:
            logger.info(
                f"{scenario.name} n={size} {cell.measure.value}/{cell.estimator.value}: "
                f"rmse={cell.rmse} absent={cell.n_absent} failed={cell.n_failed} "
                f"[{elapsed or 'under a second'}]"
            )
        if size_cells and size_cells[0].flagged:
            logger.warning(
                f"{scenario.name} n={size}: {size_cells[0].n_failed} of "
                f"{len(size_outcomes)} replications failed"
            )

    return RmseReport(
        cells=cells,
        metadata={"version": TOOL_VERSION, "scenarios": [_scenario_metadata(scenario)]},
    )


def run_scenarios(
    scenarios: Iterable[Scenario], parallelism: Optional[int] = None
) -> RmseReport:
    report = RmseReport(metadata={"version": TOOL_VERSION, "scenarios": []})
    for scenario in scenarios:
        report = report.merge(run_scenario(scenario, parallelism))
    return report


def study_scenarios(
    full: bool = False,
    replications: Optional[int] = None,
    sizes: Optional[Sequence[int]] = None,
    base_seed: int = 0,
) -> List[Scenario]:
    """
    The fourteen model/preprocessing columns of the RMSE study.

    Desk scale uses 50 replications and sizes up to 2000; ``full`` uses 200
    replications and sizes up to 5000. Sizes holding fewer than two seasonal
    periods are dropped from decomposed scenarios.
    """
    sizes = tuple(sizes or (FULL_SIZES if full else DESK_SIZES))
    replications = replications or (FULL_REPLICATIONS if full else DESK_REPLICATIONS)

    scenarios = []
    for model, preprocessing in STUDY_COLUMNS:
        scenario_sizes = sizes
        if preprocessing is Preprocessing.DECOMPOSED:
            period = get_model_spec(model).period
            scenario_sizes = tuple(size for size in sizes if size >= 2 * period)
            dropped = sorted(set(sizes) - set(scenario_sizes))
            if dropped:
                warnings.warn(
                    f"Dropping sizes {dropped} from {model.value}/decomposed: "
                    f"fewer than two periods of {period}"
                )
            if not scenario_sizes:
                continue
        scenarios.append(
            Scenario(
                model=model,
                preprocessing=preprocessing,
                sizes=scenario_sizes,
                replications=replications,
                base_seed=base_seed,
            )
        )
    return scenarios


def load_scenarios(path: Union[str, Path]) -> List[Scenario]:
    """
    Read a JSON scenario document: one scenario object or a list of them.

    Keys: model, preprocessing, sizes, replications, measures, base_seed and
    optionally alpha, absent_policy, burn_in, garch_omega.
    """
    path = Path(path)
    try:
        document = json.loads(path.read_text())
    except FileNotFoundError:
        raise ScenarioError(f"Scenario file not found: {path}")
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{path} is not valid JSON: {e}")

    if isinstance(document, dict):
        document = [document]
    try:
        return TypeAdapter(List[Scenario]).validate_python(document)
    except ValidationError as e:
        raise ScenarioError(f"Invalid scenario in {path}: {e}")


def emit_report(report: RmseReport, format: ReportFormat = ReportFormat.CSV) -> str:
    """
    Serialize a report.

    CSV has the columns model,preprocessing,size,measure,estimator,rmse,
    n_reps,n_absent; JSON carries the full cells (failure counts, flags and
    estimate distributions) plus the metadata. Rows are ordered by key.
    """
    format = ReportFormat(format)
    cells = report.sorted_cells()
    if format is ReportFormat.JSON:
        document = {
            "metadata": report.metadata,
            "cells": [cell.model_dump(mode="json") for cell in cells],
        }
        return json.dumps(document, indent=2, sort_keys=True) + "\n"

    rows = [
        {column: value for column, value in zip(REPORT_COLUMNS, _csv_row(cell))}
        for cell in cells
    ]
    frame = pd.DataFrame(rows, columns=REPORT_COLUMNS)
    return frame.to_csv(index=False, lineterminator="\n")


def _csv_row(cell: RmseCell) -> list:
    return [*cell.key[:5], cell.rmse, cell.n_reps, cell.n_absent]


def parse_report(text: str, format: ReportFormat = ReportFormat.CSV) -> RmseReport:
    """Inverse of ``emit_report``; CSV input yields cells without failure details."""
    format = ReportFormat(format)
    if format is ReportFormat.JSON:
        try:
            return RmseReport.model_validate(json.loads(text))
        except (json.JSONDecodeError, ValidationError) as e:
            raise ScenarioError(f"Cannot parse JSON report: {e}")

    frame = pd.read_csv(io.StringIO(text), float_precision="round_trip")
    missing = [column for column in REPORT_COLUMNS if column not in frame.columns]
    if missing:
        raise ScenarioError(f"Report is missing columns: {', '.join(missing)}")
    cells = [
        RmseCell(
            model=row.model,
            preprocessing=row.preprocessing,
            size=int(row.size),
            measure=row.measure,
            estimator=row.estimator,
            rmse=None if pd.isna(row.rmse) else float(row.rmse),
            n_reps=int(row.n_reps),
            n_absent=int(row.n_absent),
        )
        for row in frame.itertuples(index=False)
    ]
    return RmseReport(cells=cells)


def format_table(report: RmseReport) -> str:
    """Rows (size, estimator) by columns (model/preprocessing, measure)."""
    if not report.cells:
        return "(empty report)"
    frame = pd.DataFrame(
        [
            {
                "scenario": f"{cell.model.value}/{cell.preprocessing.value}",
                "measure": cell.measure.value,
                "size": cell.size,
                "estimator": cell.estimator.value,
                "rmse": np.nan if cell.rmse is None else cell.rmse,
            }
            for cell in report.sorted_cells()
        ]
    )
    table = frame.pivot(
        index=["size", "estimator"], columns=["scenario", "measure"], values="rmse"
    )
    return table.to_string(float_format=lambda value: f"{value:.2f}", na_rep="-")
