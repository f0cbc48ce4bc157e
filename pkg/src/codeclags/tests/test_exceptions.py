import pytest

from codeclags import (
    CodecLagsError,
    CorruptDataset,
    DegenerateConditioning,
    DegenerateError,
    DegenerateResponse,
    DegenerateSeries,
    Diverged,
    InputError,
    InsufficientData,
    InvalidInput,
    MissingColumn,
    NumericallySingular,
    ParseError,
    ScenarioError,
    TooShort,
)


@pytest.mark.parametrize(
    "error_class",
    [InvalidInput, InsufficientData, ScenarioError],
)
def test_input_errors_exit_with_two(error_class):
    """Test that input errors share the input-error exit code."""
    error = error_class("bad")
    assert isinstance(error, InputError)
    assert isinstance(error, CodecLagsError)
    assert error.exit_code == 2


@pytest.mark.parametrize(
    "error_class",
    [DegenerateResponse, DegenerateConditioning, DegenerateSeries],
)
def test_degenerate_errors_exit_with_three(error_class):
    """Test that degenerate-data errors share their exit code."""
    error = error_class("flat")
    assert isinstance(error, DegenerateError)
    assert error.exit_code == 3


def test_missing_column_lists_available_columns():
    """Test that MissingColumn names the column and the header it searched."""
    error = MissingColumn("value", ["t", "x"])

    assert error.column == "value"
    assert error.exit_code == 2
    assert str(error) == "Column 'value' not found (available: t, x)"


def test_missing_column_without_header():
    """Test MissingColumn formatting when nothing is available."""
    assert str(MissingColumn("value")) == "Column 'value' not found"


def test_parse_error_reports_file_line():
    """Test that ParseError carries the 1-based line and source path."""
    error = ParseError(line=3, value="x", path="data.csv")

    assert error.line == 3
    assert str(error) == "Cannot parse value 'x' at data.csv:3"
    assert str(ParseError(line=7, value="")) == "Cannot parse value '' at line 7"


def test_too_short_and_corrupt_dataset():
    """Test the context carried by TooShort and CorruptDataset."""
    short = TooShort(1)
    corrupt = CorruptDataset("lynx", "checksum mismatch")

    assert short.rows == 1
    assert "found 1" in str(short)
    assert corrupt.name == "lynx"
    assert corrupt.reason == "checksum mismatch"
    assert "lynx" in str(corrupt)
    assert isinstance(corrupt, InputError)


def test_numerically_singular_carries_lag_and_variance():
    """Test NumericallySingular context and exit code."""
    error = NumericallySingular(lag=4, variance=1e-15)

    assert error.lag == 4
    assert error.variance == 1e-15
    assert error.exit_code == 3
    assert "lag 4" in str(error)


def test_diverged_message_and_exit_code():
    """Test that Diverged reports the step, model and magnitude."""
    error = Diverged(step=42, model="sari", value=-3e13)

    assert error.exit_code == 5
    assert error.step == 42
    assert str(error) == "Simulation diverged at step 42 [sari] (|value| = 3.000e+13)"


def test_base_error_exit_code():
    """Test that the base error falls back to the generic exit code."""
    assert CodecLagsError("boom").exit_code == 1
