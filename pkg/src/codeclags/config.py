import logging
import os
from importlib.metadata import PackageNotFoundError, version

from codeclags.exceptions import InvalidInput

logger = logging.getLogger(__name__)

DEFAULT_SEED = 2024
DEFAULT_ALPHA = 0.05
DEFAULT_BURN_IN = 500

DIVERGENCE_LIMIT = 1e12
KDTREE_MAX_DIM = 16
ARGMAX_TOLERANCE = 1e-12
SINGULAR_VARIANCE = 1e-12
PACF_SLACK = 1e-9

FAILURE_FLAG_FRACTION = 0.10
RESEED_STRIDE = 1_000_003

DESK_REPLICATIONS = 50
DESK_SIZES = (100, 500, 1000, 2000)
FULL_REPLICATIONS = 200
FULL_SIZES = (100, 500, 1000, 2000, 5000)

BENCH_TRIALS = 7

PARALLELISM_ENV = "CODECLAGS_PARALLELISM"
LOG_LEVEL_ENV = "CODECLAGS_LOG_LEVEL"


def default_parallelism() -> int:
    """Worker count for experiments, taken from CODECLAGS_PARALLELISM."""
    raw = os.getenv(PARALLELISM_ENV)
    if not raw:
        return 1
    try:
        workers = int(raw.strip())
    except ValueError:
        raise InvalidInput(f"{PARALLELISM_ENV} must be an integer, got {raw!r}")
    if workers < 1:
        raise InvalidInput(f"{PARALLELISM_ENV} must be >= 1, got {workers}")
    return workers


def default_log_level() -> str:
    level = (os.getenv(LOG_LEVEL_ENV) or "INFO").strip().upper()
    if level not in logging.getLevelNamesMapping():
        logger.warning(f"Unknown log level {level!r} in {LOG_LEVEL_ENV}, using INFO")
        return "INFO"
    return level


try:
    TOOL_VERSION = version("codec-lags")
except PackageNotFoundError:
    TOOL_VERSION = "0.0.0+local"
