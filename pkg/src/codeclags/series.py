"""Ranks and lag embeddings shared by every selector."""

import numpy as np
from scipy.stats import rankdata

from codeclags.exceptions import InsufficientData, InvalidInput
from codeclags.models.series import LagEmbedding, RankVector, TimeSeries
from codeclags.types import TiePolicy


def as_finite_array(values, name: str = "values") -> np.ndarray:
    array = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(array)):
        raise InvalidInput(f"{name} contains non-finite entries")
    return array


def check_seed(seed: int) -> int:
    if seed is None or int(seed) != seed or seed < 0:
        raise InvalidInput(f"Seed must be a non-negative integer, got {seed!r}")
    return int(seed)


def random_break_order(values: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Stable ascending order of ``values`` with ties shuffled by ``rng``."""
    tiebreak = rng.permutation(len(values))
    return np.lexsort((tiebreak, values))


def rank_vector(
    values, tie_policy: TiePolicy = TiePolicy.RANDOM_BREAK, seed: int = 0
) -> RankVector:
    """
    Rank observations from 1 to n.

    ``random_break`` returns a true permutation of 1..n, shuffling tied entries
    with a generator seeded by ``seed``. ``average`` assigns midranks.
    """
    values = as_finite_array(values)
    seed = check_seed(seed)
    tie_policy = TiePolicy(tie_policy)
    if values.ndim != 1 or len(values) < 1:
        raise InvalidInput("rank_vector expects a non-empty 1-D sequence")

    if tie_policy is TiePolicy.AVERAGE:
        ranks = rankdata(values, method="average")
    else:
        order = random_break_order(values, np.random.default_rng(seed))
        ranks = np.empty(len(values), dtype=np.int64)
        ranks[order] = np.arange(1, len(values) + 1)
    return RankVector(ranks=ranks, tie_policy=tie_policy, seed=seed)


def build_lag_matrix(series: TimeSeries, h: int) -> LagEmbedding:
    """
    Regression design for lag selection.

    Row i (1-based) holds target X_{h+i} and lag j holds X_{h+i-j}, so the
    embedding has n - h rows.
    """
    n = len(series)
    if h < 1:
        raise InvalidInput(f"Number of lags must be positive, got {h}")
    if h >= n - 1:
        raise InsufficientData(
            f"h={h} leaves {n - h} row(s) from {n} observations; need h < {n - 1}"
        )
    values = series.values
    target = values[h:]
    lags = np.column_stack([values[h - j : n - j] for j in range(1, h + 1)])
    return LagEmbedding(target=target, lags=lags, h=h)


def as_time_series(series, label: str = "series") -> TimeSeries:
    """Accept a ``TimeSeries`` or any 1-D sequence of reals."""
    if isinstance(series, TimeSeries):
        return series
    return TimeSeries(values=series, label=label)
