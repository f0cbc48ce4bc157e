import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codeclags.exceptions import InsufficientData, InvalidInput
from codeclags.models.series import TimeSeries
from codeclags.preprocess import (
    apply_preprocessing,
    classical_decompose,
    deseasonalize,
    difference,
    log_transform,
)
from codeclags.types import Preprocessing


def test_difference_examples():
    """Test first and second differences of a short series."""
    series = TimeSeries(values=[1, 3, 6, 10], label="steps")

    np.testing.assert_array_equal(difference(series).values, [2, 3, 4])
    np.testing.assert_array_equal(difference(series, 2).values, [1, 1])
    assert difference(series).label == "steps"


def test_difference_of_constant_is_zero():
    """Test that a constant series differences to zeros."""
    np.testing.assert_array_equal(difference([4.0] * 6).values, np.zeros(5))


def test_difference_errors():
    """Test difference validation."""
    with pytest.raises(InsufficientData):
        difference([1.0, 2.0, 3.0], 3)
    with pytest.raises(InvalidInput):
        difference([1.0, 2.0, 3.0], 0)


@given(
    st.lists(
        st.integers(min_value=-1000, max_value=1000), min_size=3, max_size=50
    )
)
@settings(max_examples=50, deadline=None)
def test_difference_inverts_cumulative_sum(increments):
    """Test that differencing undoes a cumulative sum."""
    series = TimeSeries(values=np.cumsum(increments))

    np.testing.assert_array_equal(difference(series).values, increments[1:])


@given(
    st.lists(
        st.tuples(
            st.integers(min_value=-1000, max_value=1000),
            st.integers(min_value=-1000, max_value=1000),
        ),
        min_size=4,
        max_size=40,
    ),
    st.integers(min_value=-5, max_value=5),
    st.integers(min_value=1, max_value=2),
)
@settings(max_examples=50, deadline=None)
def test_difference_is_linear(pairs, scale, d):
    """Test that differencing commutes with sums and scalar multiples."""
    x = np.array([a for a, _ in pairs], dtype=float)
    y = np.array([b for _, b in pairs], dtype=float)

    combined = difference(scale * x + y, d).values
    expected = scale * difference(x, d).values + difference(y, d).values
    np.testing.assert_array_equal(combined, expected)


def test_decompose_alternating_pattern():
    """Test a pure period-2 pattern: zero trend and indices (+1, -1)."""
    series = TimeSeries(values=[1.0, -1.0] * 10, period=2)
    result = classical_decompose(series)

    assert result.period == 2
    np.testing.assert_allclose(result.seasonal_index, [1.0, -1.0], atol=1e-12)
    np.testing.assert_allclose(result.trend[result.trend_defined], 0.0, atol=1e-12)
    assert not result.trend_defined[0]
    assert not result.trend_defined[-1]


def test_decompose_linear_ramp_has_no_season():
    """Test that a ramp is pure trend under the centred moving average."""
    result = classical_decompose(np.arange(40.0), period=4)

    assert np.all(np.abs(result.seasonal_index) < 1e-9)
    defined = result.trend_defined
    np.testing.assert_allclose(result.remainder[defined], 0.0, atol=1e-9)
    assert defined.sum() == 36


def test_decompose_reconstructs_series(rng):
    """Test that trend + seasonal + remainder rebuilds the data."""
    t = np.arange(120)
    values = 0.1 * t + np.sin(2 * np.pi * t / 12) + 0.2 * rng.standard_normal(120)
    result = classical_decompose(TimeSeries(values=values, period=12))

    defined = result.trend_defined
    rebuilt = result.trend + result.seasonal + result.remainder
    np.testing.assert_allclose(rebuilt[defined], values[defined])
    np.testing.assert_allclose(result.seasonal[:12], result.seasonal[12:24])
    assert abs(result.seasonal_index.sum()) < 1e-9


def test_decompose_needs_period_and_two_cycles():
    """Test decomposition validation."""
    with pytest.raises(InvalidInput):
        classical_decompose(np.arange(30.0))
    with pytest.raises(InsufficientData):
        classical_decompose(np.arange(23.0), period=12)


def test_deseasonalize_pure_pattern_vanishes():
    """Test that removing the season of a noiseless pattern leaves zeros."""
    series = TimeSeries(values=[1.0, 2.0, -1.0, -2.0] * 12, period=4)

    assert np.all(np.abs(deseasonalize(series).values) < 1e-9)


def test_deseasonalize_is_idempotent(rng):
    """Test that a deseasonalized series has no seasonal indices left."""
    t = np.arange(120)
    values = 5 + 0.05 * t + 3 * np.cos(2 * np.pi * t / 12) + rng.standard_normal(120)
    adjusted = deseasonalize(TimeSeries(values=values, period=12))

    assert len(adjusted) == 120
    assert adjusted.period == 12
    again = classical_decompose(adjusted)
    assert np.all(np.abs(again.seasonal_index) < 1e-9)


def test_apply_preprocessing():
    """Test the three preprocessing variants."""
    series = TimeSeries(values=np.arange(48.0) + np.tile([1.0, -1.0], 24), period=2)

    assert apply_preprocessing(series, "raw") is series
    assert len(apply_preprocessing(series, Preprocessing.DIFFERENCED)) == 47
    decomposed = apply_preprocessing(series, Preprocessing.DECOMPOSED)
    np.testing.assert_allclose(decomposed.values, np.arange(48.0), atol=1e-9)


def test_log_transform():
    """Test the natural log helper and its positivity check."""
    np.testing.assert_allclose(log_transform([1.0, np.e]).values, [0.0, 1.0])

    with pytest.raises(InvalidInput, match="observation 2"):
        log_transform([1.0, 0.0, 2.0])
