from codeclags.config import TOOL_VERSION as __version__
from codeclags.dependence import (
    codec_conditional,
    codec_unconditional,
    nearest_neighbors,
    xi_coefficient,
)
from codeclags.exceptions import (
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
from codeclags.experiment import (
    emit_report,
    format_table,
    parse_report,
    rmse,
    run_scenario,
    study_scenarios,
)
from codeclags.ingest import load_benchmark, load_series_csv
from codeclags.lagselect import (
    estimate_order,
    foci_select,
    schwert_max_lag,
    select_lags_codec,
    select_lags_pacf,
)
from codeclags.models.experiment import RmseCell, RmseReport, Scenario
from codeclags.models.selection import FociResult, OrderEstimates, PacfResult
from codeclags.models.series import (
    DecompositionResult,
    LagEmbedding,
    RankVector,
    TimeSeries,
)
from codeclags.models.simulation import ModelSpec, SimulationRun, get_model_spec
from codeclags.pacf import (
    autocorrelation,
    compute_pacf,
    pacf_durbin_levinson,
    significant_lags,
)
from codeclags.preprocess import classical_decompose, deseasonalize, difference
from codeclags.series import build_lag_matrix, rank_vector
from codeclags.simulate import simulate, true_order

__all__ = [
    "CodecLagsError",
    "CorruptDataset",
    "DecompositionResult",
    "DegenerateConditioning",
    "DegenerateError",
    "DegenerateResponse",
    "DegenerateSeries",
    "Diverged",
    "FociResult",
    "InputError",
    "InsufficientData",
    "InvalidInput",
    "LagEmbedding",
    "MissingColumn",
    "ModelSpec",
    "NumericallySingular",
    "OrderEstimates",
    "PacfResult",
    "ParseError",
    "RankVector",
    "RmseCell",
    "RmseReport",
    "Scenario",
    "ScenarioError",
    "SimulationRun",
    "TimeSeries",
    "TooShort",
    "__version__",
    "autocorrelation",
    "build_lag_matrix",
    "classical_decompose",
    "codec_conditional",
    "codec_unconditional",
    "compute_pacf",
    "deseasonalize",
    "difference",
    "emit_report",
    "estimate_order",
    "foci_select",
    "format_table",
    "get_model_spec",
    "load_benchmark",
    "load_series_csv",
    "nearest_neighbors",
    "pacf_durbin_levinson",
    "parse_report",
    "rank_vector",
    "rmse",
    "run_scenario",
    "schwert_max_lag",
    "select_lags_codec",
    "select_lags_pacf",
    "significant_lags",
    "simulate",
    "study_scenarios",
    "true_order",
    "xi_coefficient",
]
