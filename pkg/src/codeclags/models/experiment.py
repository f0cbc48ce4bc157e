from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from codeclags.config import DEFAULT_ALPHA, DEFAULT_BURN_IN, DESK_REPLICATIONS, DESK_SIZES
from codeclags.exceptions import ScenarioError
from codeclags.models.selection import OrderEstimates
from codeclags.models.simulation import ModelSpec, get_model_spec
from codeclags.types import AbsentPolicy, Estimator, Measure, ModelKind, Preprocessing

CellKey = Tuple[str, str, int, str, str]


class Scenario(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: ModelKind
    preprocessing: Preprocessing = Preprocessing.RAW
    sizes: Tuple[int, ...] = DESK_SIZES
    replications: int = Field(default=DESK_REPLICATIONS, ge=1)
    measures: Tuple[Measure, ...] = (Measure.PEARSON, Measure.SPEARMAN, Measure.CODEC)
    base_seed: int = Field(default=0, ge=0)
    alpha: float = Field(default=DEFAULT_ALPHA, gt=0, lt=1)
    absent_policy: AbsentPolicy = AbsentPolicy.ZERO
    burn_in: int = Field(default=DEFAULT_BURN_IN, ge=0)
    garch_omega: float = Field(default=0.0, ge=0)

    @field_validator("sizes")
    @classmethod
    def _check_sizes(cls, sizes):
        if not sizes:
            raise ValueError("at least one sample size is required")
        if any(size < 20 for size in sizes):
            raise ValueError("sample sizes must be >= 20")
        return tuple(sorted(set(sizes)))

    @field_validator("measures")
    @classmethod
    def _check_measures(cls, measures):
        if not measures:
            raise ValueError("at least one measure is required")
        return tuple(dict.fromkeys(measures))

    @model_validator(mode="after")
    def _check_preprocessing(self):
        if self.preprocessing is Preprocessing.DECOMPOSED:
            period = self.spec.period
            if period is None:
                raise ScenarioError(
                    f"Model '{self.model.value}' has no seasonal period to decompose"
                )
            too_small = [size for size in self.sizes if size < 2 * period]
            if too_small:
                raise ScenarioError(
                    f"Sizes {too_small} hold fewer than two periods of {period}"
                )
        return self

    @property
    def spec(self) -> ModelSpec:
        return get_model_spec(self.model)

    @property
    def name(self) -> str:
        return f"{self.model.value}/{self.preprocessing.value}"


class ReplicationOutcome(BaseModel):
    """Order estimates of every measure for one simulated replication."""

    model_config = ConfigDict(frozen=True)

    size: int = Field(gt=0)
    replication: int = Field(ge=0)
    seed: int = Field(ge=0)
    estimates: Dict[Measure, OrderEstimates] = Field(default_factory=dict)
    reseeded: bool = False
    failed: bool = False
    reason: Optional[str] = None


class RmseCell(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: ModelKind
    preprocessing: Preprocessing
    size: int = Field(gt=0)
    measure: Measure
    estimator: Estimator
    rmse: Optional[float] = Field(default=None, ge=0)
    n_reps: int = Field(ge=0)
    n_absent: int = Field(default=0, ge=0)
    n_failed: int = Field(default=0, ge=0)
    flagged: bool = False
    distribution: Dict[int, int] = Field(default_factory=dict)

    @property
    def key(self) -> CellKey:
        return (
            self.model.value,
            self.preprocessing.value,
            self.size,
            self.measure.value,
            self.estimator.value,
        )


class RmseReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    cells: List[RmseCell] = Field(default_factory=list)
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @property
    def flagged(self) -> List[RmseCell]:
        return [cell for cell in self.cells if cell.flagged]

    def sorted_cells(self) -> List[RmseCell]:
        return sorted(self.cells, key=lambda cell: cell.key)

    def cell(
        self,
        model,
        preprocessing,
        size: int,
        measure,
        estimator,
    ) -> Optional[RmseCell]:
        wanted = (
            ModelKind(model).value,
            Preprocessing(preprocessing).value,
            size,
            Measure(measure).value,
            Estimator(estimator).value,
        )
        for cell in self.cells:
            if cell.key == wanted:
                return cell
        return None

    def merge(self, other: "RmseReport") -> "RmseReport":
        """Concatenate cells; scenario lists are joined, other metadata keys take ``other``."""
        metadata = {**self.metadata, **other.metadata}
        if "scenarios" in self.metadata or "scenarios" in other.metadata:
            metadata["scenarios"] = [
                *self.metadata.get("scenarios", []),
                *other.metadata.get("scenarios", []),
            ]
        return RmseReport(cells=[*self.cells, *other.cells], metadata=metadata)
