from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from codeclags.exceptions import InsufficientData, InvalidInput
from codeclags.types import FloatArray, FloatMatrix, RankArray, TiePolicy


class TimeSeries(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: FloatArray
    period: Optional[int] = Field(default=None, gt=0)
    label: str = Field(default="series", min_length=1, max_length=150)

    @model_validator(mode="after")
    def _check_invariants(self):
        if len(self.values) < 2:
            raise InsufficientData(
                f"Series '{self.label}' needs at least 2 observations, got {len(self.values)}"
            )
        if not np.all(np.isfinite(self.values)):
            position = int(np.flatnonzero(~np.isfinite(self.values))[0]) + 1
            raise InvalidInput(
                f"Series '{self.label}' has a non-finite value at observation {position}"
            )
        if self.period is not None and not 2 <= self.period < len(self.values):
            raise InvalidInput(
                f"Period {self.period} must satisfy 2 <= period < {len(self.values)}"
            )
        return self

    def __len__(self) -> int:
        return len(self.values)

    def with_values(self, values, label: Optional[str] = None) -> "TimeSeries":
        """Copy carrying new values; the period is kept only if still valid."""
        period = self.period
        if period is not None and period >= len(values):
            period = None
        return TimeSeries(values=values, period=period, label=label or self.label)


class LagEmbedding(BaseModel):
    """Target X_t and the lag columns X_{t-1}..X_{t-h}; column j-1 holds lag j."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    target: FloatArray
    lags: FloatMatrix
    h: int = Field(gt=0)

    @model_validator(mode="after")
    def _check_shape(self):
        rows, columns = self.lags.shape
        if columns != self.h:
            raise InvalidInput(f"Expected {self.h} lag columns, got {columns}")
        if rows != len(self.target):
            raise InvalidInput(
                f"Lag columns have {rows} rows but the target has {len(self.target)}"
            )
        if rows < 2:
            raise InsufficientData(f"Embedding needs at least 2 rows, got {rows}")
        return self

    @property
    def n_rows(self) -> int:
        return len(self.target)

    def lag(self, j: int) -> np.ndarray:
        """Column for lag j (1-based)."""
        if not 1 <= j <= self.h:
            raise InvalidInput(f"Lag {j} outside 1..{self.h}")
        return self.lags[:, j - 1]


class RankVector(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ranks: RankArray
    tie_policy: TiePolicy = TiePolicy.RANDOM_BREAK
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_permutation(self):
        if self.tie_policy is TiePolicy.RANDOM_BREAK and self.ranks.dtype.kind != "i":
            raise InvalidInput("random_break ranks must be an integer permutation")
        return self


class DecompositionResult(BaseModel):
    """Classical additive decomposition; ``trend`` is NaN outside the moving-average window."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    trend: FloatArray
    seasonal: FloatArray
    remainder: FloatArray
    seasonal_index: FloatArray
    period: int = Field(ge=2)

    @model_validator(mode="after")
    def _check_components(self):
        n = len(self.seasonal)
        if len(self.trend) != n or len(self.remainder) != n:
            raise InvalidInput("Decomposition components must share one length")
        if len(self.seasonal_index) != self.period:
            raise InvalidInput(
                f"Expected {self.period} seasonal indices, got {len(self.seasonal_index)}"
            )
        scale = max(1.0, float(np.max(np.abs(self.seasonal_index))))
        if abs(float(np.sum(self.seasonal_index))) > 1e-9 * scale:
            raise InvalidInput("Seasonal indices must sum to zero over one period")
        return self

    @property
    def trend_defined(self) -> np.ndarray:
        return np.isfinite(self.trend)
