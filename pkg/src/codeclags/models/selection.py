from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.stats import norm

from codeclags.config import PACF_SLACK
from codeclags.exceptions import InvalidInput
from codeclags.types import CorrelationMethod, Estimator, FloatArray


class RankedLag(BaseModel):
    model_config = ConfigDict(frozen=True)

    lag: int = Field(ge=1)
    estimate: Optional[float] = None
    selected: bool = False


class FociResult(BaseModel):
    """Greedy CODEC selection over a lag embedding.

    ``ordered_lags`` and ``step_estimates`` hold the lags accepted before the
    stopping rule fired, in selection order. ``rejected`` is the candidate whose
    estimate was not positive, when there was one. ``full_ranking`` continues the
    greedy order over every lag when requested.
    """

    model_config = ConfigDict(frozen=True)

    ordered_lags: List[int] = Field(default_factory=list)
    step_estimates: List[float] = Field(default_factory=list)
    stop_index: int = Field(ge=0)
    h_max: int = Field(gt=0)
    stop_reason: str = "non_positive_estimate"
    rejected: Optional[RankedLag] = None
    full_ranking: Optional[List[RankedLag]] = None

    @model_validator(mode="after")
    def _check_selection(self):
        if len(self.ordered_lags) != len(self.step_estimates):
            raise InvalidInput("Each selected lag needs exactly one step estimate")
        if self.stop_index != len(self.ordered_lags) or self.stop_index > self.h_max:
            raise InvalidInput(
                f"stop_index {self.stop_index} inconsistent with "
                f"{len(self.ordered_lags)} selected lags and h_max {self.h_max}"
            )
        if len(set(self.ordered_lags)) != len(self.ordered_lags):
            raise InvalidInput(f"Duplicate lags in selection {self.ordered_lags}")
        if any(not 1 <= lag <= self.h_max for lag in self.ordered_lags):
            raise InvalidInput(f"Selected lags must lie in 1..{self.h_max}")
        if any(estimate <= 0 for estimate in self.step_estimates):
            raise InvalidInput("Selected lags must carry positive estimates")
        return self

    @property
    def selected(self) -> List[int]:
        return list(self.ordered_lags[: self.stop_index])


class OrderEstimates(BaseModel):
    """Largest, second and third largest significant lags as AR order estimates."""

    model_config = ConfigDict(frozen=True)

    p1: Optional[int] = Field(default=None, ge=1)
    p2: Optional[int] = Field(default=None, ge=1)
    p3: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_order(self):
        present = [p for p in (self.p1, self.p2, self.p3) if p is not None]
        expected = [self.p1, self.p2, self.p3][: len(present)]
        if present != expected:
            raise InvalidInput("Estimates must be filled from p1 downwards")
        if any(a <= b for a, b in zip(present, present[1:])):
            raise InvalidInput(f"Expected p1 > p2 > p3, got {present}")
        return self

    @classmethod
    def from_lags(cls, lags) -> "OrderEstimates":
        top = sorted(set(int(lag) for lag in lags), reverse=True)[:3]
        top += [None] * (3 - len(top))
        return cls(p1=top[0], p2=top[1], p3=top[2])

    def get(self, estimator: Estimator) -> Optional[int]:
        return getattr(self, Estimator(estimator).value)


class PacfResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    pacf: FloatArray
    method: CorrelationMethod
    n_effective: int = Field(gt=0)
    alpha: float = Field(gt=0, lt=1)
    threshold: float = Field(gt=0)

    @model_validator(mode="after")
    def _check_band(self):
        if np.any(np.abs(self.pacf) > 1 + PACF_SLACK):
            raise InvalidInput("Partial autocorrelations must lie within [-1, 1]")
        expected = band_threshold(self.alpha, self.n_effective)
        if abs(self.threshold - expected) > 1e-12:
            raise InvalidInput(
                f"Threshold {self.threshold} does not match z/sqrt(n) = {expected}"
            )
        return self

    @property
    def max_lag(self) -> int:
        return len(self.pacf)


def band_threshold(alpha: float, n_effective: int) -> float:
    """Two-sided Gaussian band z_{1-alpha/2} / sqrt(n)."""
    return float(norm.ppf(1 - alpha / 2) / np.sqrt(n_effective))
