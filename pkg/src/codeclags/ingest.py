"""Loading user CSV files and the bundled benchmark series."""

import hashlib
import io
import logging
from functools import lru_cache
from importlib.resources import files
from pathlib import Path
from typing import Dict, Optional, Union

import numpy as np
import pandas as pd

from codeclags.exceptions import (
    CorruptDataset,
    InvalidInput,
    MissingColumn,
    ParseError,
    TooShort,
)
from codeclags.models.dataset import DatasetDescriptor
from codeclags.models.series import TimeSeries
from codeclags.types import BenchmarkName

logger = logging.getLogger(__name__)

MANIFEST = "MANIFEST.csv"

BENCHMARKS: Dict[BenchmarkName, DatasetDescriptor] = {
    BenchmarkName.SUNSPOTS: DatasetDescriptor(
        name=BenchmarkName.SUNSPOTS,
        expected_length=288,
        source_path="sunspots.csv",
        description="Annual sunspot numbers, 1700-1987",
    ),
    BenchmarkName.LYNX: DatasetDescriptor(
        name=BenchmarkName.LYNX,
        expected_length=114,
        source_path="lynx.csv",
        description="Annual Canadian lynx trappings, 1821-1934",
    ),
    BenchmarkName.PASSENGERS: DatasetDescriptor(
        name=BenchmarkName.PASSENGERS,
        expected_length=144,
        period=12,
        source_path="passengers.csv",
        description="Monthly international airline passengers (thousands), 1949-1960",
    ),
}


def _parse_values(
    text: str, value_column: str, source: str, period: Optional[int], label: str
) -> TimeSeries:
    # 1-based file line of every non-blank line; the first one is the header
    line_numbers = [i + 1 for i, line in enumerate(text.splitlines()) if line.strip()]
    if not line_numbers:
        raise TooShort(0)

    frame = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
    if value_column not in frame.columns:
        raise MissingColumn(value_column, [str(column) for column in frame.columns])

    raw = frame[value_column].str.strip()
    checked = pd.to_numeric(raw, errors="coerce").to_numpy(dtype=float)
    bad = ~np.isfinite(checked)
    if np.any(bad):
        row = int(np.argmax(bad))
        raise ParseError(line=line_numbers[row + 1], value=raw.iloc[row], path=source)
    # to_numeric's fast parser can be 1 ulp off; astype parses exactly
    values = raw.astype("float64").to_numpy()
    if len(values) < 2:
        raise TooShort(len(values))
    return TimeSeries(values=values, period=period, label=label)


def load_series_csv(
    path: Union[str, Path],
    value_column: str = "value",
    period: Optional[int] = None,
    label: Optional[str] = None,
) -> TimeSeries:
    """
    Read one column of a headed CSV file as a series, in file order.

    Raises ``MissingColumn`` when the header lacks ``value_column``,
    ``ParseError`` with the 1-based file line of the first cell that is not a
    finite real, and ``TooShort`` for fewer than two data rows.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise InvalidInput(f"Input file not found: {path}")
    series = _parse_values(text, value_column, str(path), period, label or path.stem)
    logger.debug(f"Loaded {len(series)} observations from {path}")
    return series


@lru_cache(maxsize=1)
def _manifest() -> Dict[str, tuple]:
    text = files("codeclags").joinpath("data", MANIFEST).read_text()
    frame = pd.read_csv(io.StringIO(text), dtype={"name": str, "bytes": int, "sha256": str})
    return {row.name: (row.bytes, row.sha256) for row in frame.itertuples(index=False)}


def verify_checksum(name: str, content: bytes) -> None:
    """Compare bundled bytes with the manifest's length and SHA-256 digest."""
    expected = _manifest().get(name)
    if expected is None:
        raise CorruptDataset(name, "no manifest entry")
    expected_bytes, expected_digest = expected
    if len(content) != expected_bytes:
        raise CorruptDataset(name, f"{len(content)} bytes, manifest says {expected_bytes}")
    digest = hashlib.sha256(content).hexdigest()
    if digest != expected_digest:
        raise CorruptDataset(name, f"sha256 {digest} does not match manifest")


def get_descriptor(name: Union[BenchmarkName, str]) -> DatasetDescriptor:
    try:
        name = BenchmarkName(name)
    except ValueError:
        raise InvalidInput(
            f"Unknown benchmark {name!r}; expected one of: "
            + ", ".join(benchmark.value for benchmark in BENCHMARKS)
        )
    if name not in BENCHMARKS:
        raise InvalidInput(f"Benchmark '{name.value}' is not bundled; load it from a CSV")
    return BENCHMARKS[name]


def load_benchmark(name: Union[BenchmarkName, str]) -> TimeSeries:
    """Load a bundled benchmark after checking its checksum and length."""
    descriptor = get_descriptor(name)
    resource = files("codeclags").joinpath("data", descriptor.source_path)
    content = resource.read_bytes()
    verify_checksum(descriptor.source_path, content)

    series = _parse_values(
        content.decode("utf-8"),
        descriptor.value_column,
        descriptor.source_path,
        descriptor.period,
        descriptor.name.value,
    )
    if len(series) != descriptor.expected_length:
        raise CorruptDataset(
            descriptor.name.value,
            f"{len(series)} observations, expected {descriptor.expected_length}",
        )
    logger.info(f"Loaded benchmark {descriptor.name.value} ({len(series)} observations)")
    return series
