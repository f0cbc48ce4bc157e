from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from codeclags.models.series import TimeSeries
from codeclags.types import ModelKind


class ModelSpec(BaseModel):
    """One generator of the simulation suite with its fixed coefficients.

    Linear models carry ascending backshift polynomials under ``ar`` and ``ma``
    (already multiplied out for seasonal factors). Nonlinear models carry named
    constants. ``differences`` is the integration order applied after the core
    recurrence.
    """

    model_config = ConfigDict(frozen=True)

    kind: ModelKind
    coefficients: Dict[str, Tuple[float, ...]]
    true_p: int = Field(ge=1)
    period: Optional[int] = Field(default=None, ge=2)
    differences: int = Field(default=0, ge=0, le=1)
    description: str = ""


class SimulationRun(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ModelKind
    series: TimeSeries
    seed: int = Field(ge=0)
    burn_in: int = Field(ge=0)
    innovations: str = "standard_normal"
    garch_omega: float = Field(default=0.0, ge=0)


def _seasonal(coefficients: Dict[int, float], degree: int) -> Tuple[float, ...]:
    poly = [0.0] * (degree + 1)
    poly[0] = 1.0
    for power, value in coefficients.items():
        poly[power] = value
    return tuple(poly)


# Ascending polynomials: ar = (1, -phi_1, ...) acting on X, ma = (1, theta_1, ...) on eps.
MODEL_SPECS: Dict[ModelKind, ModelSpec] = {
    ModelKind.SARIMA_2_1_1x2_0_2_52: ModelSpec(
        kind=ModelKind.SARIMA_2_1_1x2_0_2_52,
        coefficients={
            "ar": (1.0, -0.3, -0.1),
            "seasonal_ar": _seasonal({52: -0.47, 104: -0.16}, 104),
            "ma": (1.0, 0.68),
            "seasonal_ma": _seasonal({52: 0.59, 104: 0.62}, 104),
        },
        true_p=2,
        period=52,
        differences=1,
        description="SARIMA(2,1,1)x(2,0,2)_52",
    ),
    ModelKind.ARIMA_3_1_1: ModelSpec(
        kind=ModelKind.ARIMA_3_1_1,
        coefficients={"ar": (1.0, -0.7, 0.5, 0.3), "ma": (1.0, 0.4)},
        true_p=3,
        differences=1,
        description="ARIMA(3,1,1)",
    ),
    ModelKind.ARMA_3_1: ModelSpec(
        kind=ModelKind.ARMA_3_1,
        coefficients={"ar": (1.0, -0.7, 0.5, -0.3), "ma": (1.0, -0.4)},
        true_p=3,
        description="ARMA(3,1)",
    ),
    ModelKind.NLARMA_2_2: ModelSpec(
        kind=ModelKind.NLARMA_2_2,
        coefficients={
            "cos_lag1": (2.0,),
            "sin_lag2": (0.5,),
            "eps_lag1": (0.4,),
            "logistic_eps_lag2": (0.8,),
        },
        true_p=2,
        description="NLARMA(2,2)",
    ),
    ModelKind.SETAR_2_2_2_1: ModelSpec(
        kind=ModelKind.SETAR_2_2_2_1,
        coefficients={
            "threshold": (2.0,),
            "lower": (2.9, -0.4, -0.1),
            "upper": (-1.5, 0.2, 0.3),
        },
        true_p=2,
        description="SETAR(2,2;2;1)",
    ),
    ModelKind.ARIMA_GARCH_1_1_1_1_1: ModelSpec(
        kind=ModelKind.ARIMA_GARCH_1_1_1_1_1,
        coefficients={
            "ar": (1.0, -0.75),
            "ma": (1.0, 0.5),
            "garch": (0.05, 0.9),
            "sigma2_init": (1.0,),
        },
        true_p=1,
        differences=1,
        description="ARIMA(1,1,1)-GARCH(1,1)",
    ),
    ModelKind.NLAR_4: ModelSpec(
        kind=ModelKind.NLAR_4,
        coefficients={
            "sin_lag1": (3.0, 1.0),
            "sin_lag2": (2.0, 3.0),
            "sin_lag3": (0.5, 2.0),
            "logistic_lag4": (3.0,),
        },
        true_p=4,
        description="NLAR(4)",
    ),
    ModelKind.AR_8: ModelSpec(
        kind=ModelKind.AR_8,
        coefficients={
            "ar": (1.0, -0.5, 0.2, -0.1, -0.2, -0.1, 0.75, -0.28, 0.25),
            "ma": (1.0,),
        },
        true_p=8,
        description="AR(8)",
    ),
    ModelKind.SARI_5_1_0x3_0_0_12: ModelSpec(
        kind=ModelKind.SARI_5_1_0x3_0_0_12,
        coefficients={
            "ar": (1.0, 0.3, 0.1, 0.6, -0.2, -0.4),
            "seasonal_ar": _seasonal({12: 0.47, 24: 0.16, 36: -0.74}, 36),
            "ma": (1.0,),
        },
        true_p=5,
        period=12,
        differences=1,
        description="SARI(5,1,0)x(3,0,0)_12",
    ),
    ModelKind.ARI_6_1_0: ModelSpec(
        kind=ModelKind.ARI_6_1_0,
        coefficients={
            # phi_5 = +0.25; with -0.25 the core has a root inside the unit circle.
            "ar": (1.0, -0.7, 0.5, -0.3, 0.6, -0.25, 0.4),
            "ma": (1.0,),
        },
        true_p=6,
        differences=1,
        description="ARI(6,1,0)",
    ),
}


def get_model_spec(kind) -> ModelSpec:
    return MODEL_SPECS[ModelKind(kind)]
