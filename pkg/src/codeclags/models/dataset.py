from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from codeclags.types import BenchmarkName


class DatasetDescriptor(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: BenchmarkName
    expected_length: int = Field(ge=2)
    period: Optional[int] = Field(default=None, ge=2)
    source_path: str = Field(min_length=1)
    value_column: str = "value"
    description: str = ""
