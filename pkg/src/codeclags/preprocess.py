import logging
from typing import Optional

import numpy as np
from statsmodels.tsa.seasonal import seasonal_decompose

from codeclags.exceptions import InsufficientData, InvalidInput
from codeclags.models.series import DecompositionResult, TimeSeries
from codeclags.series import as_time_series
from codeclags.types import Preprocessing

logger = logging.getLogger(__name__)


def difference(series, d: int = 1) -> TimeSeries:
    """Apply (1 - B) ``d`` times; the result is ``d`` observations shorter."""
    series = as_time_series(series)
    if d < 1:
        raise InvalidInput(f"Differencing order must be positive, got {d}")
    if d >= len(series):
        raise InsufficientData(f"Cannot difference {len(series)} observations {d} times")
    return series.with_values(np.diff(series.values, n=d))


def _resolve_period(series: TimeSeries, period: Optional[int]) -> int:
    period = period or series.period
    if period is None:
        raise InvalidInput(f"Series '{series.label}' has no period to decompose")
    if period < 2:
        raise InvalidInput(f"Period must be >= 2, got {period}")
    if len(series) < 2 * period:
        raise InsufficientData(
            f"Decomposition needs at least two periods ({2 * period} observations), "
            f"got {len(series)}"
        )
    return period


def classical_decompose(series, period: Optional[int] = None) -> DecompositionResult:
    """
    Classical additive decomposition.

    The trend is a centred moving average of width ``period`` (2 x period with
    half weights at the ends for even periods) and is NaN where the window
    does not fit. Seasonal indices are phase means of the detrended series,
    centred to sum to zero, repeated over the whole sample.
    """
    series = as_time_series(series)
    period = _resolve_period(series, period)

    result = seasonal_decompose(
        np.asarray(series.values), model="additive", period=period, two_sided=True
    )
    seasonal = np.asarray(result.seasonal)
    trend = np.asarray(result.trend)
    return DecompositionResult(
        trend=trend,
        seasonal=seasonal,
        remainder=series.values - trend - seasonal,
        seasonal_index=seasonal[:period],
        period=period,
    )


def deseasonalize(series, period: Optional[int] = None) -> TimeSeries:
    """Subtract the seasonal component only; the trend is retained."""
    series = as_time_series(series)
    decomposition = classical_decompose(series, period)
    return series.with_values(series.values - decomposition.seasonal)


def apply_preprocessing(
    series, preprocessing: Preprocessing, period: Optional[int] = None
) -> TimeSeries:
    series = as_time_series(series)
    preprocessing = Preprocessing(preprocessing)
    if preprocessing is Preprocessing.DIFFERENCED:
        return difference(series, 1)
    if preprocessing is Preprocessing.DECOMPOSED:
        return deseasonalize(series, period)
    return series


def log_transform(series) -> TimeSeries:
    """Natural logarithm of a strictly positive series."""
    series = as_time_series(series)
    if np.any(series.values <= 0):
        position = int(np.argmax(series.values <= 0)) + 1
        raise InvalidInput(
            f"Log transform needs positive values; observation {position} is "
            f"{series.values[position - 1]}"
        )
    return series.with_values(np.log(series.values))
