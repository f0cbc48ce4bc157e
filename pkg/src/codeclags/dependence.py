"""
Rank-based dependence: the xi coefficient and the CODEC estimates.

All estimates are assembled from integer rank counts, so numerator and
denominator are exact; only the final division is floating point.
"""

import logging

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import rankdata

from codeclags.config import KDTREE_MAX_DIM
from codeclags.exceptions import (
    DegenerateConditioning,
    DegenerateResponse,
    InsufficientData,
    InvalidInput,
)
from codeclags.models.dependence import DependenceEstimate, NeighborMap
from codeclags.series import as_finite_array, check_seed, random_break_order

logger = logging.getLogger(__name__)

NEIGHBOR_METHODS = ("auto", "kdtree", "brute")
_BRUTE_CHUNK_CELLS = 2**22


def max_ranks(y: np.ndarray) -> np.ndarray:
    """R_i = #{j : y_j <= y_i}."""
    return rankdata(y, method="max").astype(np.int64)


def reverse_max_ranks(y: np.ndarray) -> np.ndarray:
    """L_i = #{j : y_j >= y_i}."""
    return rankdata(-y, method="max").astype(np.int64)


def _as_points(points, n: int = None, name: str = "points") -> np.ndarray:
    points = as_finite_array(points, name)
    if points.ndim == 1:
        points = points.reshape(-1, 1)
    if points.ndim != 2 or points.shape[1] < 1:
        raise InvalidInput(f"{name} must be an n x d matrix")
    if n is not None and points.shape[0] != n:
        raise InvalidInput(f"{name} has {points.shape[0]} rows, expected {n}")
    return np.ascontiguousarray(points)


def _response(y) -> np.ndarray:
    y = as_finite_array(y, "y")
    if y.ndim != 1:
        raise InvalidInput("y must be a 1-D sequence")
    if len(y) < 3:
        raise InsufficientData(f"Need at least 3 observations, got {len(y)}")
    return y


def _squared_distances(points: np.ndarray, rows: np.ndarray, candidates: np.ndarray):
    """Squared distances from each row point to its candidate points.

    Both neighbour paths go through this function so that exact ties are
    judged with identical arithmetic.
    """
    diff = points[candidates] - points[rows][:, None, :]
    return (diff**2).sum(axis=-1)


def _break_ties(choice: np.ndarray, ties: dict, rng: np.random.Generator) -> np.ndarray:
    for row in sorted(ties):
        candidates = ties[row]
        choice[row] = candidates[rng.integers(len(candidates))]
    return choice


def _kdtree_neighbors(points: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    n = len(points)
    rows = np.arange(n)
    tree = cKDTree(points)
    k = min(n, 3)
    _, idx = tree.query(points, k=k)
    idx = idx.reshape(n, k)

    sq = _squared_distances(points, rows, idx)
    is_self = idx == rows[:, None]
    sq[is_self] = np.inf
    best = sq.min(axis=1)
    tied = sq == best[:, None]
    count = tied.sum(axis=1)
    non_self = k - is_self.sum(axis=1)

    choice = idx[rows, np.argmax(tied, axis=1)].astype(np.int64)
    # every returned neighbour tied: more equidistant points may lie beyond k
    saturated = (count == non_self) & (count < n - 1)

    ties = {}
    for row in np.flatnonzero((count > 1) | saturated):
        if saturated[row]:
            radius = np.sqrt(best[row]) * (1 + 1e-9) + 1e-300
            pool = np.array(sorted(tree.query_ball_point(points[row], r=radius)))
            pool = pool[pool != row]
            pool_sq = _squared_distances(points, np.array([row]), pool[None, :])[0]
            candidates = pool[pool_sq == pool_sq.min()]
        else:
            candidates = np.sort(idx[row][tied[row]])
        if len(candidates) > 1:
            ties[int(row)] = candidates
        else:
            choice[row] = candidates[0]
    return _break_ties(choice, ties, rng)


def _brute_neighbors(points: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    n, d = points.shape
    everyone = np.arange(n)
    chunk = max(1, _BRUTE_CHUNK_CELLS // max(1, n * d))
    choice = np.empty(n, dtype=np.int64)
    ties = {}
    for start in range(0, n, chunk):
        rows = everyone[start : start + chunk]
        sq = _squared_distances(points, rows, np.broadcast_to(everyone, (len(rows), n)))
        sq[np.arange(len(rows)), rows] = np.inf
        best = sq.min(axis=1)
        tied = sq == best[:, None]
        choice[rows] = np.argmax(tied, axis=1)
        for offset in np.flatnonzero(tied.sum(axis=1) > 1):
            ties[int(rows[offset])] = np.flatnonzero(tied[offset])
    return _break_ties(choice, ties, rng)


def neighbor_index(
    points: np.ndarray, rng: np.random.Generator, method: str = "auto"
) -> np.ndarray:
    """0-based nearest neighbour of every row, excluding the row itself."""
    if method not in NEIGHBOR_METHODS:
        raise InvalidInput(f"Unknown neighbour method {method!r}")
    if len(points) < 2:
        raise InsufficientData("Nearest neighbours need at least 2 points")
    if method == "auto":
        method = "kdtree" if points.shape[1] <= KDTREE_MAX_DIM else "brute"
    if method == "kdtree":
        return _kdtree_neighbors(points, rng)
    return _brute_neighbors(points, rng)


def nearest_neighbors(points, tie_seed: int = 0, method: str = "auto") -> NeighborMap:
    """
    Euclidean nearest neighbour of each point among the others.

    Exact distance ties are broken uniformly at random with ``tie_seed``. A
    k-d tree is used up to 16 dimensions and brute force beyond; ``method``
    forces either path, and both return identical maps for the same seed.
    """
    tie_seed = check_seed(tie_seed)
    points = _as_points(points)
    index = neighbor_index(points, np.random.default_rng(tie_seed), method)
    return NeighborMap(index=index, tie_seed=tie_seed)


def xi_coefficient(x, y, seed: int = 0) -> DependenceEstimate:
    """
    Chatterjee's xi of y on x.

    Pairs are sorted by x (x-ties shuffled with ``seed``) and r_i is the rank
    of the i-th y in that order. Uses the tie-aware form
    1 - n * sum|r_{i+1} - r_i| / (2 * sum l_i (n - l_i)), which reduces to
    1 - 3 * sum|r_{i+1} - r_i| / (n^2 - 1) for distinct y. Asymmetric in x and y.
    """
    seed = check_seed(seed)
    x = as_finite_array(x, "x")
    y = as_finite_array(y, "y")
    if x.ndim != 1 or y.ndim != 1 or len(x) != len(y):
        raise InvalidInput(f"x and y must be 1-D with equal lengths: {x.shape} vs {y.shape}")
    n = len(y)
    if n < 3:
        raise InsufficientData(f"xi needs at least 3 pairs, got {n}")

    order = random_break_order(x, np.random.default_rng(seed))
    y_sorted = y[order]
    r = max_ranks(y_sorted)
    l = reverse_max_ranks(y_sorted)

    denominator = 2 * int(np.sum(l * (n - l)))
    if denominator == 0:
        raise DegenerateResponse("xi is undefined for a constant response")
    numerator = denominator - n * int(np.sum(np.abs(np.diff(r))))
    return DependenceEstimate(
        value=numerator / denominator,
        numerator=numerator,
        denominator=denominator,
        n=n,
    )


def unconditional_from_ranks(
    ranks: np.ndarray, reverse_ranks: np.ndarray, z: np.ndarray, rng, method: str = "auto"
) -> DependenceEstimate:
    n = len(ranks)
    denominator = int(np.sum(reverse_ranks * (n - reverse_ranks)))
    if denominator == 0:
        raise DegenerateResponse("CODEC is undefined for a constant response")
    neighbors = neighbor_index(z, rng, method)
    numerator = int(np.sum(n * np.minimum(ranks, ranks[neighbors]) - reverse_ranks**2))
    return DependenceEstimate(
        value=numerator / denominator,
        numerator=numerator,
        denominator=denominator,
        n=n,
    )


def conditional_from_ranks(
    ranks: np.ndarray,
    conditioned: np.ndarray,
    joint: np.ndarray,
    rng,
    method: str = "auto",
) -> DependenceEstimate:
    """``conditioned`` is min(R_i, R_N(i)) for the neighbours N in x_cond."""
    denominator = int(np.sum(ranks - conditioned))
    if denominator == 0:
        raise DegenerateConditioning(
            "Response is a function of the conditioning variables at sample level"
        )
    neighbors = neighbor_index(joint, rng, method)
    numerator = int(np.sum(np.minimum(ranks, ranks[neighbors]) - conditioned))
    return DependenceEstimate(
        value=numerator / denominator,
        numerator=numerator,
        denominator=denominator,
        n=len(ranks),
    )


def codec_unconditional(y, z, seed: int = 0, method: str = "auto") -> DependenceEstimate:
    """
    CODEC estimate T_n(Y, Z).

    With R_i = #{j : y_j <= y_i}, L_i = #{j : y_j >= y_i} and M(i) the nearest
    neighbour of z_i, returns
    sum(n * min(R_i, R_M(i)) - L_i^2) / sum(L_i * (n - L_i)).
    """
    seed = check_seed(seed)
    y = _response(y)
    z = _as_points(z, len(y), "z")
    return unconditional_from_ranks(
        max_ranks(y), reverse_max_ranks(y), z, np.random.default_rng(seed), method
    )


def codec_conditional(
    y, z, x_cond, seed: int = 0, method: str = "auto"
) -> DependenceEstimate:
    """
    Conditional CODEC estimate T_n(Y, Z | X).

    N(i) is the nearest neighbour of row i in ``x_cond`` and M(i) its nearest
    neighbour in the concatenation (x_cond, z). Returns
    sum(min(R_i, R_M(i)) - min(R_i, R_N(i))) / sum(R_i - min(R_i, R_N(i))).
    """
    seed = check_seed(seed)
    y = _response(y)
    z = _as_points(z, len(y), "z")
    x_cond = _as_points(x_cond, len(y), "x_cond")
    rng = np.random.default_rng(seed)

    ranks = max_ranks(y)
    conditioned = np.minimum(ranks, ranks[neighbor_index(x_cond, rng, method)])
    joint = np.hstack([x_cond, z])
    return conditional_from_ranks(ranks, conditioned, joint, rng, method)
