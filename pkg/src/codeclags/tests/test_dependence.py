import statistics
import time

import numpy as np
import pytest

from codeclags.dependence import (
    codec_conditional,
    codec_unconditional,
    nearest_neighbors,
    xi_coefficient,
)
from codeclags.exceptions import (
    DegenerateConditioning,
    DegenerateResponse,
    InsufficientData,
    InvalidInput,
)


def _reference_neighbors(points):
    # O(n^2) scan; callers use continuous data so the minimum is unique
    points = np.asarray(points, dtype=float).reshape(len(points), -1)
    n = len(points)
    neighbors = []
    for i in range(n):
        best, best_distance = None, np.inf
        for j in range(n):
            if j == i:
                continue
            distance = float(np.sum((points[i] - points[j]) ** 2))
            if distance < best_distance:
                best, best_distance = j, distance
        neighbors.append(best)
    return neighbors


def _reference_ranks(y):
    R = [sum(1 for other in y if other <= value) for value in y]
    L = [sum(1 for other in y if other >= value) for value in y]
    return R, L


def _reference_unconditional(y, z):
    n = len(y)
    R, L = _reference_ranks(y)
    M = _reference_neighbors(z)
    numerator = sum(n * min(R[i], R[M[i]]) - L[i] ** 2 for i in range(n))
    denominator = sum(L[i] * (n - L[i]) for i in range(n))
    return numerator, denominator


def _reference_conditional(y, z, x):
    n = len(y)
    R, _ = _reference_ranks(y)
    N = _reference_neighbors(x)
    M = _reference_neighbors(np.column_stack([x, z]))
    numerator = sum(min(R[i], R[M[i]]) - min(R[i], R[N[i]]) for i in range(n))
    denominator = sum(R[i] - min(R[i], R[N[i]]) for i in range(n))
    return numerator, denominator


def _random_instance(rng):
    n = int(rng.integers(3, 13))
    if rng.random() < 0.5:
        y = rng.integers(0, 4, size=n).astype(float)
    else:
        y = rng.standard_normal(n)
    z = rng.standard_normal((n, int(rng.integers(1, 4))))
    x = rng.standard_normal((n, int(rng.integers(1, 4))))
    return y, z, x


def test_xi_monotone_identity():
    """Test that strictly increasing distinct data give 1 - 3 / (n + 1)."""
    estimate = xi_coefficient([1, 2, 3, 4, 5], [1, 2, 3, 4, 5])

    assert estimate.value == pytest.approx(0.5)
    assert estimate.n == 5
    for n in (10, 37, 200):
        x = np.arange(n, dtype=float)
        assert xi_coefficient(x, x).value == pytest.approx(1 - 3 / (n + 1))


def test_xi_hand_evaluated_example():
    """Test xi on a four-point example with sum |r_{i+1} - r_i| = 5."""
    estimate = xi_coefficient([1, 2, 3, 4], [1, 3, 2, 4])

    assert estimate.numerator == 0
    assert estimate.value == 0.0


def test_xi_matches_definition_with_tied_responses(rng):
    """Test the tie-aware xi formula on data with repeated y values."""
    for _ in range(50):
        n = int(rng.integers(3, 30))
        x = rng.standard_normal(n)
        y = rng.integers(0, 3, size=n).astype(float)
        if np.ptp(y) == 0:
            continue
        y_sorted = y[np.argsort(x)]
        r = np.array([np.sum(y_sorted <= v) for v in y_sorted])
        l = np.array([np.sum(y_sorted >= v) for v in y_sorted])
        expected = 1 - n * np.sum(np.abs(np.diff(r))) / (2 * np.sum(l * (n - l)))

        assert xi_coefficient(x, y).value == pytest.approx(expected, abs=1e-12)


def test_xi_is_asymmetric():
    """Test that xi(x, y) and xi(y, x) differ for a non-injective relation."""
    x = np.linspace(-1, 1, 201)
    y = x**2

    assert xi_coefficient(x, y).value > 0.9
    assert xi_coefficient(y, x, seed=1).value < 0.5


def test_xi_near_zero_under_independence():
    """Test that xi is close to 0 for independent uniforms."""
    values = []
    for seed in range(20):
        rng = np.random.default_rng(seed)
        values.append(
            xi_coefficient(rng.random(10_000), rng.random(10_000), seed=seed).value
        )

    assert sum(abs(value) < 0.05 for value in values) >= 19


def test_xi_x_ties_use_seed():
    """Test that x ties are broken reproducibly by the seed."""
    x = [0, 0, 0, 0, 1, 1, 1, 1]
    y = [5, 1, 7, 3, 2, 8, 6, 4]

    assert xi_coefficient(x, y, seed=4) == xi_coefficient(x, y, seed=4)
    values = {xi_coefficient(x, y, seed=seed).value for seed in range(20)}
    assert len(values) > 1


def test_xi_errors():
    """Test xi input validation."""
    with pytest.raises(InsufficientData):
        xi_coefficient([1, 2], [2, 1])
    with pytest.raises(InvalidInput):
        xi_coefficient([1, 2, np.nan], [1, 2, 3])
    with pytest.raises(InvalidInput):
        xi_coefficient([1, 2, 3], [1, 2])
    with pytest.raises(DegenerateResponse):
        xi_coefficient([1, 2, 3], [4, 4, 4])


def test_nearest_neighbors_forced_examples():
    """Test nearest neighbours where distances force the answer."""
    np.testing.assert_array_equal(nearest_neighbors([0.0, 1.0, 5.0]).index, [1, 0, 1])
    np.testing.assert_array_equal(
        nearest_neighbors([[0, 0], [0, 1], [10, 10]]).index, [1, 0, 1]
    )
    np.testing.assert_array_equal(nearest_neighbors([3.0, 3.0]).index, [1, 0])


def test_nearest_neighbors_break_ties_by_seed():
    """Test that equidistant neighbours are chosen at random per seed."""
    choices = {
        int(nearest_neighbors([3.0, 3.0, 3.0], tie_seed=seed).index[0])
        for seed in range(32)
    }
    assert choices == {1, 2}

    first = nearest_neighbors([0.0, 1.0, 2.0, 3.0], tie_seed=9)
    second = nearest_neighbors([0.0, 1.0, 2.0, 3.0], tie_seed=9)
    np.testing.assert_array_equal(first.index, second.index)
    assert first.index[0] == 1
    assert first.index[3] == 2
    assert first.index[1] in (0, 2)


def test_nearest_neighbors_needs_two_points():
    """Test that a single point has no neighbour."""
    with pytest.raises(InsufficientData):
        nearest_neighbors([[1.0, 2.0]])
    with pytest.raises(InvalidInput):
        nearest_neighbors([0.0, 1.0], method="ball")


@pytest.mark.parametrize("d", [1, 2, 3, 17])
def test_kdtree_and_brute_agree_on_ties(d):
    """Test that both search paths return identical maps on tie-heavy grids."""
    rng = np.random.default_rng(d)
    for trial in range(10):
        points = rng.integers(0, 3, size=(60, d)).astype(float)
        kdtree = nearest_neighbors(points, tie_seed=trial, method="kdtree")
        brute = nearest_neighbors(points, tie_seed=trial, method="brute")
        auto = nearest_neighbors(points, tie_seed=trial)

        np.testing.assert_array_equal(kdtree.index, brute.index)
        np.testing.assert_array_equal(auto.index, brute.index)


def test_codec_unconditional_matches_reference():
    """Test unconditional CODEC against an O(n^2) evaluation on 500 instances."""
    rng = np.random.default_rng(2024)
    for _ in range(500):
        y, z, _ = _random_instance(rng)
        numerator, denominator = _reference_unconditional(y, z)
        for method in ("kdtree", "brute"):
            if denominator == 0:
                with pytest.raises(DegenerateResponse):
                    codec_unconditional(y, z, method=method)
                continue
            estimate = codec_unconditional(y, z, method=method)
            assert estimate.numerator == numerator
            assert estimate.denominator == denominator
            assert estimate.value == numerator / denominator


def test_codec_conditional_matches_reference():
    """Test conditional CODEC against an O(n^2) evaluation on 500 instances."""
    rng = np.random.default_rng(4202)
    for _ in range(500):
        y, z, x = _random_instance(rng)
        numerator, denominator = _reference_conditional(y, z, x)
        for method in ("kdtree", "brute"):
            if denominator == 0:
                with pytest.raises(DegenerateConditioning):
                    codec_conditional(y, z, x, method=method)
                continue
            estimate = codec_conditional(y, z, x, method=method)
            assert estimate.numerator == numerator
            assert estimate.denominator == denominator


def test_codec_constant_response():
    """Test that a constant response has no CODEC estimate."""
    with pytest.raises(DegenerateResponse):
        codec_unconditional([2.0] * 10, np.arange(10.0))


def test_codec_functional_dependence(rng):
    """Test that y = z gives an estimate close to 1."""
    z = rng.standard_normal(50)

    assert codec_unconditional(z, z).value >= 0.8


def test_codec_bounded_above(rng):
    """Test that estimates never exceed 1."""
    for _ in range(50):
        y = rng.standard_normal(30)
        assert codec_unconditional(y, y + 1e-3 * rng.standard_normal(30)).value <= 1


def test_codec_invariances(rng):
    """Test invariance to increasing transforms of y and rescaling of z."""
    y = rng.standard_normal(200)
    z = rng.standard_normal((200, 2))
    x = rng.standard_normal(200)

    base = codec_unconditional(y, z, seed=5)
    assert codec_unconditional(np.exp(y), z, seed=5) == base
    assert codec_unconditional(y, 4.0 * z, seed=5) == base

    conditional = codec_conditional(y, z, x, seed=5)
    assert codec_conditional(y**3, z, x, seed=5) == conditional
    assert codec_conditional(y, 4.0 * z, 4.0 * x, seed=5) == conditional


def test_codec_conditional_redundant_variable(rng):
    """Test that z equal to the conditioning variable adds nothing."""
    x = rng.standard_normal(100)
    y = x + rng.standard_normal(100)

    estimate = codec_conditional(y, x, x)
    assert estimate.numerator == 0
    assert estimate.value == 0.0


def test_codec_conditional_independence(rng):
    """Test that noise carries no information once y is explained by x."""
    x = rng.uniform(-1, 1, 200)
    y = x**2
    z = 1e-3 * rng.standard_normal(200)

    try:
        value = codec_conditional(y, z, x).value
    except DegenerateConditioning:
        return
    assert abs(value) < 0.15


def test_codec_conditional_degenerate():
    """Test that y fully determined by its neighbours raises."""
    x = np.array([0.0, 0.1, 5.0, 5.1])
    y = np.array([1.0, 1.0, 2.0, 2.0])

    with pytest.raises(DegenerateConditioning):
        codec_conditional(y, np.arange(4.0), x)


def test_codec_shape_validation():
    """Test that z must have one row per observation."""
    with pytest.raises(InvalidInput):
        codec_unconditional([1.0, 2.0, 3.0], [1.0, 2.0])
    with pytest.raises(InsufficientData):
        codec_unconditional([1.0, 2.0], [1.0, 2.0])


@pytest.mark.timing
def test_xi_runtime_scaling():
    """Test that doubling n multiplies the xi runtime by less than 2.6."""

    def median_runtime(n):
        rng = np.random.default_rng(n)
        x, y = rng.standard_normal(n), rng.standard_normal(n)
        timings = []
        for _ in range(7):
            started = time.perf_counter()
            xi_coefficient(x, y)
            timings.append(time.perf_counter() - started)
        return statistics.median(timings)

    median_runtime(10_000)
    assert median_runtime(200_000) / median_runtime(100_000) < 2.6
