"""
FOCI lag selection driven by CODEC, Schwert's maximum lag, and the
p1/p2/p3 order estimators shared with the PACF baselines.
"""

import logging
import math
from typing import Dict, List, Optional

import numpy as np

from codeclags.config import ARGMAX_TOLERANCE, DEFAULT_ALPHA, DEFAULT_SEED
from codeclags.dependence import (
    conditional_from_ranks,
    max_ranks,
    neighbor_index,
    reverse_max_ranks,
    unconditional_from_ranks,
)
from codeclags.exceptions import DegenerateConditioning, InsufficientData
from codeclags.models.selection import FociResult, OrderEstimates, RankedLag
from codeclags.models.series import LagEmbedding
from codeclags.pacf import compute_pacf, significant_lags
from codeclags.series import as_time_series, build_lag_matrix, check_seed
from codeclags.types import CorrelationMethod

logger = logging.getLogger(__name__)

NON_POSITIVE = "non_positive_estimate"
DEGENERATE = "degenerate_conditioning"
EXHAUSTED = "all_lags_selected"


def schwert_max_lag(n: int) -> int:
    """h* = floor(12 (n / 100)^(1/4)), clamped to n - 2."""
    if n < 4:
        raise InsufficientData(f"Schwert's rule needs n >= 4, got {n}")
    return min(math.floor(12 * (n / 100) ** 0.25), n - 2)


def _step_rng(seed: int, step: int, lag: int) -> np.random.Generator:
    return np.random.default_rng([seed, step, lag])


def _best_candidate(scores: Dict[int, float]) -> int:
    # near-equal estimates go to the smaller lag
    best = None
    for lag in sorted(scores):
        if best is None or scores[lag] > scores[best] + ARGMAX_TOLERANCE:
            best = lag
    return best


def _score_step(
    embedding: LagEmbedding,
    ranks: np.ndarray,
    reverse_ranks: np.ndarray,
    conditioning: List[int],
    candidates: List[int],
    seed: int,
    step: int,
    method: str,
) -> Dict[int, float]:
    if not conditioning:
        return {
            lag: unconditional_from_ranks(
                ranks,
                reverse_ranks,
                embedding.lag(lag).reshape(-1, 1),
                _step_rng(seed, step, lag),
                method,
            ).value
            for lag in candidates
        }

    x_cond = embedding.lags[:, [lag - 1 for lag in conditioning]]
    neighbors = neighbor_index(x_cond, _step_rng(seed, step, 0), method)
    conditioned = np.minimum(ranks, ranks[neighbors])
    return {
        lag: conditional_from_ranks(
            ranks,
            conditioned,
            np.column_stack([x_cond, embedding.lag(lag)]),
            _step_rng(seed, step, lag),
            method,
        ).value
        for lag in candidates
    }


def foci_select(
    embedding: LagEmbedding,
    seed: int = DEFAULT_SEED,
    full_ranking: bool = False,
    method: str = "auto",
) -> FociResult:
    """
    Greedy forward selection of lags by CODEC.

    Step 1 takes the lag with the largest unconditional estimate; every later
    step takes the lag with the largest estimate conditional on the lags
    chosen so far. Selection stops at the first non-positive maximum or when
    every lag is chosen. With ``full_ranking`` the greedy order is continued
    past the stop, for reporting only.

    Each (step, lag) evaluation draws its tie-breaking stream from
    ``(seed, step, lag)``, so results do not depend on evaluation order.
    """
    seed = check_seed(seed)
    if embedding.n_rows < 3:
        raise InsufficientData(
            f"FOCI needs at least 3 embedding rows, got {embedding.n_rows}"
        )

    ranks = max_ranks(embedding.target)
    reverse_ranks = reverse_max_ranks(embedding.target)

    remaining = list(range(1, embedding.h + 1))
    conditioning: List[int] = []
    ordered_lags: List[int] = []
    step_estimates: List[float] = []
    ranking: List[RankedLag] = []
    rejected: Optional[RankedLag] = None
    stop_reason = EXHAUSTED
    stopped = False

    step = 0
    while remaining:
        step += 1
        try:
            scores = _score_step(
                embedding,
                ranks,
                reverse_ranks,
                conditioning,
                remaining,
                seed,
                step,
                method,
            )
        except DegenerateConditioning:
            logger.debug(f"Step {step}: target is a function of lags {conditioning}")
            if not stopped:
                stop_reason = DEGENERATE
            ranking.extend(RankedLag(lag=lag, estimate=None) for lag in remaining)
            break

        best = _best_candidate(scores)
        estimate = scores[best]
        logger.debug(f"Step {step}: lag {best} with estimate {estimate:.6f}")

        if not stopped and estimate > 0:
            ordered_lags.append(best)
            step_estimates.append(estimate)
            ranking.append(RankedLag(lag=best, estimate=estimate, selected=True))
        else:
            if not stopped:
                stopped = True
                stop_reason = NON_POSITIVE
                rejected = RankedLag(lag=best, estimate=estimate)
                if not full_ranking:
                    break
            ranking.append(RankedLag(lag=best, estimate=estimate))

        conditioning.append(best)
        remaining.remove(best)

    logger.debug(f"FOCI selected {ordered_lags} ({stop_reason})")
    return FociResult(
        ordered_lags=ordered_lags,
        step_estimates=step_estimates,
        stop_index=len(ordered_lags),
        h_max=embedding.h,
        stop_reason=stop_reason,
        rejected=rejected,
        full_ranking=ranking if full_ranking else None,
    )


def estimate_order(result: FociResult) -> OrderEstimates:
    """p1, p2, p3 are the largest, second and third largest selected lags."""
    return OrderEstimates.from_lags(result.selected)


def select_lags_codec(
    series,
    seed: int = DEFAULT_SEED,
    max_lag: Optional[int] = None,
    full_ranking: bool = False,
) -> FociResult:
    """Embed ``series`` up to h* (Schwert's rule by default) and run FOCI."""
    series = as_time_series(series)
    h = max_lag or schwert_max_lag(len(series))
    return foci_select(build_lag_matrix(series, h), seed=seed, full_ranking=full_ranking)


def select_lags_pacf(
    series,
    method: CorrelationMethod = CorrelationMethod.PEARSON,
    alpha: float = DEFAULT_ALPHA,
    max_lag: Optional[int] = None,
) -> OrderEstimates:
    """The three largest significant PACF lags up to h* as (p1, p2, p3)."""
    series = as_time_series(series)
    if len(series) < 10:
        raise InsufficientData(
            f"PACF selection needs at least 10 observations, got {len(series)}"
        )
    h = max_lag or schwert_max_lag(len(series))
    result = compute_pacf(series, h, method=method, alpha=alpha)
    return OrderEstimates.from_lags(significant_lags(result))
