"""
Seeded generators for the ten benchmark processes.

Linear cores (ARMA, seasonal ARMA, the GARCH mean equation) are filtered
with ``scipy.signal.lfilter`` from a zero initial state; the nonlinear
recurrences are iterated directly. Integrated models generate the
differenced process, drop the burn-in, then take a cumulative sum.
"""

import logging
import math
from pathlib import Path
from typing import Tuple, Union

import numpy as np
import pandas as pd
from numpy.polynomial import polynomial as P
from scipy.signal import lfilter

from codeclags.config import DEFAULT_BURN_IN, DEFAULT_SEED, DIVERGENCE_LIMIT
from codeclags.exceptions import Diverged, InvalidInput
from codeclags.models.series import TimeSeries
from codeclags.models.simulation import ModelSpec, SimulationRun, get_model_spec
from codeclags.series import as_finite_array, check_seed
from codeclags.types import ModelKind

logger = logging.getLogger(__name__)

MIN_LENGTH = 20


def _resolve(spec: Union[ModelSpec, ModelKind, str]) -> ModelSpec:
    if isinstance(spec, ModelSpec):
        return spec
    try:
        return get_model_spec(spec)
    except ValueError:
        valid = ", ".join(kind.value for kind in ModelKind)
        raise InvalidInput(f"Unknown model {spec!r}; expected one of: {valid}")


def _check_finite(path: np.ndarray, kind: ModelKind, offset: int = 0) -> np.ndarray:
    bad = ~np.isfinite(path) | (np.abs(path) > DIVERGENCE_LIMIT)
    if np.any(bad):
        index = int(np.argmax(bad))
        raise Diverged(step=offset + index + 1, model=kind.value, value=float(path[index]))
    return path


def _polynomials(spec: ModelSpec) -> Tuple[np.ndarray, np.ndarray]:
    ar = np.asarray(spec.coefficients.get("ar", (1.0,)))
    ma = np.asarray(spec.coefficients.get("ma", (1.0,)))
    if "seasonal_ar" in spec.coefficients:
        ar = P.polymul(ar, spec.coefficients["seasonal_ar"])
    if "seasonal_ma" in spec.coefficients:
        ma = P.polymul(ma, spec.coefficients["seasonal_ma"])
    return ma, ar


def _linear(spec: ModelSpec, eps: np.ndarray) -> np.ndarray:
    ma, ar = _polynomials(spec)
    with np.errstate(over="ignore", invalid="ignore"):
        return lfilter(ma, ar, eps)


def garch_innovations(
    z: np.ndarray,
    garch: Tuple[float, float] = (0.05, 0.9),
    sigma2_init: float = 1.0,
    omega: float = 0.0,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    GARCH(1,1) innovations eps_t = sigma_t z_t with
    sigma2_t = omega + a eps_{t-1}^2 + b sigma2_{t-1}, starting from sigma2_init.
    """
    a, b = garch
    eps = np.empty(len(z))
    sigma2 = np.empty(len(z))
    previous_eps, previous_sigma2 = 0.0, sigma2_init
    for t in range(len(z)):
        current = sigma2_init if t == 0 else omega + a * previous_eps**2 + b * previous_sigma2
        sigma2[t] = current
        eps[t] = math.sqrt(current) * z[t]
        previous_eps, previous_sigma2 = eps[t], current
    return eps, sigma2


def _garch(spec: ModelSpec, z: np.ndarray, omega: float) -> np.ndarray:
    eps, _ = garch_innovations(
        z,
        garch=spec.coefficients["garch"],
        sigma2_init=spec.coefficients["sigma2_init"][0],
        omega=omega,
    )
    return _linear(spec, eps)


def _nlarma(spec: ModelSpec, eps: np.ndarray) -> np.ndarray:
    (cos1,) = spec.coefficients["cos_lag1"]
    (sin2,) = spec.coefficients["sin_lag2"]
    (ma1,) = spec.coefficients["eps_lag1"]
    (logistic2,) = spec.coefficients["logistic_eps_lag2"]
    x = np.zeros(len(eps))
    x1 = x2 = e1 = e2 = 0.0
    for t in range(len(eps)):
        x[t] = (
            cos1 * math.cos(x1)
            + sin2 * math.sin(x2)
            + ma1 * e1
            + logistic2 / (1 + math.exp(e2))
            + eps[t]
        )
        x1, x2 = x[t], x1
        e1, e2 = eps[t], e1
    return x


def _setar(spec: ModelSpec, eps: np.ndarray) -> np.ndarray:
    (threshold,) = spec.coefficients["threshold"]
    lower = spec.coefficients["lower"]
    upper = spec.coefficients["upper"]
    x = np.zeros(len(eps))
    x1 = x2 = 0.0
    for t in range(len(eps)):
        c, a1, a2 = lower if x2 <= threshold else upper
        x[t] = c + a1 * x1 + a2 * x2 + eps[t]
        x1, x2 = x[t], x1
    return x


def _logistic(value: float) -> float:
    # 1 / (1 + exp(v)) without overflow for large v
    if value > 0:
        decay = math.exp(-value)
        return decay / (1 + decay)
    return 1 / (1 + math.exp(value))


def _nlar(spec: ModelSpec, eps: np.ndarray) -> np.ndarray:
    amp1, div1 = spec.coefficients["sin_lag1"]
    amp2, div2 = spec.coefficients["sin_lag2"]
    amp3, div3 = spec.coefficients["sin_lag3"]
    (amp4,) = spec.coefficients["logistic_lag4"]
    x = np.zeros(len(eps))
    lags = [0.0, 0.0, 0.0, 0.0]
    for t in range(len(eps)):
        x1, x2, x3, x4 = lags
        x[t] = (
            amp1 * math.sin(x1 / div1)
            + amp2 * math.sin(x2 / div2)
            + amp3 * math.sin(x3 / div3)
            - amp4 * _logistic(x4)
            + eps[t]
        )
        lags = [x[t], x1, x2, x3]
    return x


def generate_path(
    spec: Union[ModelSpec, ModelKind, str],
    innovations,
    garch_omega: float = 0.0,
) -> np.ndarray:
    """
    Run the core recurrence of ``spec`` over the given innovations.

    No burn-in is dropped and no integration is applied. Raises ``Diverged``
    with the 1-based step of the first value beyond 1e12 in magnitude.
    """
    spec = _resolve(spec)
    eps = as_finite_array(innovations, "innovations")
    if eps.ndim != 1:
        raise InvalidInput("innovations must be a 1-D sequence")

    if spec.kind is ModelKind.NLARMA_2_2:
        path = _nlarma(spec, eps)
    elif spec.kind is ModelKind.SETAR_2_2_2_1:
        path = _setar(spec, eps)
    elif spec.kind is ModelKind.NLAR_4:
        path = _nlar(spec, eps)
    elif spec.kind is ModelKind.ARIMA_GARCH_1_1_1_1_1:
        path = _garch(spec, eps, garch_omega)
    else:
        path = _linear(spec, eps)
    return _check_finite(path, spec.kind)


def simulate(
    spec: Union[ModelSpec, ModelKind, str],
    n: int,
    seed: int = DEFAULT_SEED,
    burn_in: int = DEFAULT_BURN_IN,
    garch_omega: float = 0.0,
) -> SimulationRun:
    """
    Simulate ``n`` observations of ``spec`` with N(0, 1) innovations.

    ``n + burn_in`` innovations are drawn from ``default_rng(seed)``; the
    first ``burn_in`` values of the core recurrence are discarded before any
    integration, so (spec, n, seed, burn_in) fixes the series bit for bit.
    """
    spec = _resolve(spec)
    seed = check_seed(seed)
    if n < MIN_LENGTH:
        raise InvalidInput(f"Simulated length must be >= {MIN_LENGTH}, got {n}")
    if burn_in < 0:
        raise InvalidInput(f"burn_in must be non-negative, got {burn_in}")
    if garch_omega < 0:
        raise InvalidInput(f"garch_omega must be non-negative, got {garch_omega}")

    rng = np.random.default_rng(seed)
    path = generate_path(spec, rng.standard_normal(n + burn_in), garch_omega)
    values = path[burn_in:]
    if spec.differences:
        with np.errstate(over="ignore", invalid="ignore"):
            values = np.cumsum(values)
        _check_finite(values, spec.kind, offset=burn_in)

    period = spec.period if spec.period is not None and spec.period < n else None
    series = TimeSeries(values=values, period=period, label=spec.kind.value)
    return SimulationRun(
        kind=spec.kind,
        series=series,
        seed=seed,
        burn_in=burn_in,
        garch_omega=garch_omega,
    )


def true_order(spec: Union[ModelSpec, ModelKind, str]) -> int:
    """Nonseasonal AR order the experiment harness scores against."""
    return _resolve(spec).true_p


def export_csv(run: SimulationRun, path: Union[str, Path]) -> Path:
    """Write the simulated values as a one-column CSV with header ``value``."""
    path = Path(path)
    frame = pd.DataFrame({"value": run.series.values})
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(frame)} {run.kind.value} observations to {path}")
    return path
