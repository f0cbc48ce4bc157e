from enum import Enum
from typing import Annotated

import numpy as np
from pydantic import BeforeValidator, PlainSerializer


class TiePolicy(str, Enum):
    RANDOM_BREAK = "random_break"
    AVERAGE = "average"


class CorrelationMethod(str, Enum):
    PEARSON = "pearson"
    SPEARMAN = "spearman"


class Measure(str, Enum):
    PEARSON = "pearson"
    SPEARMAN = "spearman"
    CODEC = "codec"


class Preprocessing(str, Enum):
    RAW = "raw"
    DIFFERENCED = "differenced"
    DECOMPOSED = "decomposed"


class Estimator(str, Enum):
    P1 = "p1"
    P2 = "p2"
    P3 = "p3"


class AbsentPolicy(str, Enum):
    ZERO = "zero"
    SKIP = "skip"


class ReportFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class ModelKind(str, Enum):
    SARIMA_2_1_1x2_0_2_52 = "sarima"
    ARIMA_3_1_1 = "arima"
    ARMA_3_1 = "arma"
    NLARMA_2_2 = "nlarma"
    SETAR_2_2_2_1 = "setar"
    ARIMA_GARCH_1_1_1_1_1 = "garch"
    NLAR_4 = "nlar"
    AR_8 = "ar8"
    SARI_5_1_0x3_0_0_12 = "sari"
    ARI_6_1_0 = "ari"


class BenchmarkName(str, Enum):
    SUNSPOTS = "sunspots"
    LYNX = "lynx"
    PASSENGERS = "passengers"
    CUSTOM = "custom"


class BenchOp(str, Enum):
    XI = "xi"
    CODEC = "codec"


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.flags.writeable = False
    return array


def _as_float_array(value) -> np.ndarray:
    array = np.asarray(value, dtype=float)
    if array.ndim != 1:
        raise ValueError(f"expected a 1-D sequence, got shape {array.shape}")
    return _readonly(array)


def _as_float_matrix(value) -> np.ndarray:
    array = np.asarray(value, dtype=float)
    if array.ndim == 1:
        array = array.reshape(-1, 1)
    if array.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {array.shape}")
    return _readonly(array)


def _as_int_array(value) -> np.ndarray:
    array = np.asarray(value)
    if array.ndim != 1 or not np.issubdtype(array.dtype, np.integer):
        raise ValueError("expected a 1-D integer sequence")
    return _readonly(array.astype(np.int64))


def _as_rank_array(value) -> np.ndarray:
    array = np.asarray(value)
    if array.ndim != 1:
        raise ValueError(f"expected a 1-D sequence, got shape {array.shape}")
    if np.issubdtype(array.dtype, np.integer):
        return _readonly(array.astype(np.int64))
    return _readonly(array.astype(float))


def _to_list(array: np.ndarray) -> list:
    return array.tolist()


FloatArray = Annotated[
    np.ndarray,
    BeforeValidator(_as_float_array),
    PlainSerializer(_to_list, return_type=list),
]
FloatMatrix = Annotated[
    np.ndarray,
    BeforeValidator(_as_float_matrix),
    PlainSerializer(_to_list, return_type=list),
]
IntArray = Annotated[
    np.ndarray,
    BeforeValidator(_as_int_array),
    PlainSerializer(_to_list, return_type=list),
]
# int64 when the input is integral (a permutation), float otherwise (midranks)
RankArray = Annotated[
    np.ndarray,
    BeforeValidator(_as_rank_array),
    PlainSerializer(_to_list, return_type=list),
]
