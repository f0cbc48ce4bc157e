import numpy as np
import pytest
from scipy.signal import lfilter

from codeclags.models.experiment import RmseCell, RmseReport, Scenario
from codeclags.models.series import TimeSeries
from codeclags.types import Estimator, Measure, ModelKind, Preprocessing


def ar1_values(phi: float, n: int, seed: int) -> np.ndarray:
    """AR(1) path with N(0, 1) innovations and a 200-step burn-in."""
    eps = np.random.default_rng(seed).standard_normal(n + 200)
    return lfilter([1.0], [1.0, -phi], eps)[200:]


@pytest.fixture
def rng():
    """Seeded generator shared by a test."""
    return np.random.default_rng(12345)


@pytest.fixture
def ar1_series():
    """Stationary AR(1) series with phi = 0.5."""
    return TimeSeries(values=ar1_values(0.5, 2000, seed=7), label="ar1")


@pytest.fixture
def white_noise():
    """Gaussian white noise of length 2000."""
    return TimeSeries(
        values=np.random.default_rng(11).standard_normal(2000), label="noise"
    )


@pytest.fixture
def write_csv(tmp_path):
    """Write text to a CSV file under tmp_path and return its path."""

    def _write(text: str, name: str = "series.csv"):
        path = tmp_path / name
        path.write_text(text)
        return path

    return _write


@pytest.fixture
def small_scenario():
    """A cheap scenario: two sizes, three replications, every measure."""
    return Scenario(
        model=ModelKind.AR_8,
        sizes=(100, 200),
        replications=3,
        base_seed=5,
    )


@pytest.fixture
def sample_report():
    """A two-cell report, deliberately stored out of key order."""
    return RmseReport(
        cells=[
            RmseCell(
                model=ModelKind.SETAR_2_2_2_1,
                preprocessing=Preprocessing.RAW,
                size=500,
                measure=Measure.CODEC,
                estimator=Estimator.P2,
                rmse=1.25,
                n_reps=4,
                n_absent=1,
                distribution={1: 2, 2: 1},
            ),
            RmseCell(
                model=ModelKind.AR_8,
                preprocessing=Preprocessing.RAW,
                size=100,
                measure=Measure.PEARSON,
                estimator=Estimator.P1,
                rmse=0.5,
                n_reps=4,
                n_absent=0,
                distribution={8: 3, 9: 1},
            ),
        ],
        metadata={"version": "test"},
    )
