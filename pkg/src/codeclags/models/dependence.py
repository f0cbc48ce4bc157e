import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from codeclags.exceptions import InvalidInput
from codeclags.types import IntArray


class DependenceEstimate(BaseModel):
    """A CODEC or xi estimate kept as the exact ratio it was computed from."""

    model_config = ConfigDict(frozen=True)

    value: float
    numerator: float
    denominator: float
    n: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_ratio(self):
        if self.denominator != 0 and abs(
            self.value - self.numerator / self.denominator
        ) > 1e-12 * max(1.0, abs(self.value)):
            raise InvalidInput("value must equal numerator / denominator")
        if self.value > 1 + 1e-12:
            raise InvalidInput(f"Dependence estimate {self.value} exceeds 1")
        return self


class NeighborMap(BaseModel):
    """Nearest neighbour of each point, 0-based, never the point itself."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    index: IntArray
    tie_seed: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_index(self):
        n = len(self.index)
        if n and (self.index.min() < 0 or self.index.max() >= n):
            raise InvalidInput("Neighbour index out of range")
        if np.any(self.index == np.arange(n)):
            raise InvalidInput("A point cannot be its own nearest neighbour")
        return self
