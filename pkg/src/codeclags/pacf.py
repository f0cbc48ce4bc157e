"""Pearson and Spearman partial autocorrelation baselines."""

import logging
from typing import List

import numpy as np
from scipy.stats import rankdata
from statsmodels.tsa.stattools import acf, levinson_durbin

from codeclags.config import DEFAULT_ALPHA, SINGULAR_VARIANCE
from codeclags.exceptions import (
    DegenerateSeries,
    InsufficientData,
    InvalidInput,
    NumericallySingular,
)
from codeclags.models.selection import PacfResult, band_threshold
from codeclags.series import as_finite_array, as_time_series
from codeclags.types import CorrelationMethod

logger = logging.getLogger(__name__)


def autocorrelation(
    series, max_lag: int, method: CorrelationMethod = CorrelationMethod.PEARSON
) -> np.ndarray:
    """
    Sample autocorrelations r(0), r(1), ..., r(max_lag).

    Mean-centred with the lag-0 variance as denominator. The Spearman variant
    applies the same computation to average-tie ranks of the series.
    """
    series = as_time_series(series)
    method = CorrelationMethod(method)
    n = len(series)
    if max_lag < 0:
        raise InvalidInput(f"max_lag must be non-negative, got {max_lag}")
    if max_lag >= n - 1:
        raise InsufficientData(
            f"max_lag={max_lag} needs more than {max_lag + 1} observations, got {n}"
        )

    values = series.values
    if np.ptp(values) == 0:
        raise DegenerateSeries(f"Series '{series.label}' has zero variance")
    if method is CorrelationMethod.SPEARMAN:
        values = rankdata(values, method="average")

    return acf(values, nlags=max_lag, adjusted=False, fft=False, missing="none")


def pacf_durbin_levinson(autocorrelations) -> np.ndarray:
    """
    Partial autocorrelations phi_kk for k = 1..h.

    ``autocorrelations`` holds r(1)..r(h); r(0) = 1 is implied.
    """
    r = as_finite_array(autocorrelations, "autocorrelations")
    if r.ndim != 1 or len(r) < 1:
        raise InvalidInput("Durbin-Levinson needs at least one autocorrelation")
    h = len(r)
    with np.errstate(divide="ignore", invalid="ignore"):
        _, _, pacf, variances, _ = levinson_durbin(np.r_[1.0, r], nlags=h, isacov=True)
    # variances[k] is the prediction error variance after order k; variances[0] is unset
    variances[0] = 1.0
    for k in range(2, h + 1):
        if abs(variances[k - 1]) < SINGULAR_VARIANCE:
            raise NumericallySingular(lag=k, variance=float(variances[k - 1]))
    return pacf[1:]


def compute_pacf(
    series,
    max_lag: int,
    method: CorrelationMethod = CorrelationMethod.PEARSON,
    alpha: float = DEFAULT_ALPHA,
) -> PacfResult:
    series = as_time_series(series)
    method = CorrelationMethod(method)
    if max_lag < 1:
        raise InvalidInput(f"max_lag must be positive, got {max_lag}")
    if not 0 < alpha < 1:
        raise InvalidInput(f"alpha must lie in (0, 1), got {alpha}")

    r = autocorrelation(series, max_lag, method)
    pacf = pacf_durbin_levinson(r[1:])
    n_effective = len(series)
    logger.debug(f"{method.value} PACF to lag {max_lag} on {n_effective} observations")
    return PacfResult(
        pacf=pacf,
        method=method,
        n_effective=n_effective,
        alpha=alpha,
        threshold=band_threshold(alpha, n_effective),
    )


def significant_lags(pacf: PacfResult, alpha: float = None) -> List[int]:
    """Lags whose |pacf| exceeds z_{1-alpha/2} / sqrt(n_effective), ascending."""
    threshold = pacf.threshold
    if alpha is not None:
        if not 0 < alpha < 1:
            raise InvalidInput(f"alpha must lie in (0, 1), got {alpha}")
        threshold = band_threshold(alpha, pacf.n_effective)
    return [int(k) + 1 for k in np.flatnonzero(np.abs(pacf.pacf) > threshold)]
