import math

import pytest
from polymer_lab.static import DomainException

from .config import (
    ExperimentConfig,
    validate_text,
)
from .exact_drivers import (
    calibrate,
    calibrated_theta,
    kernels,
    second_moment,
    truncated_variance,
)


def _config(text: str) -> ExperimentConfig:
    config, violations = validate_text(text)
    assert violations == []
    return config


def test_kernels() -> None:
    result = kernels(_config("calib.n = 128\ncalib.theta = 0\n"))

    assert list(result.table.columns) == ["n", "u_n", "R_n"]
    assert len(result.table) == 128
    assert result.failed == []
    assert result.summary["R_N"] == pytest.approx(result.table["R_n"].iloc[-1], rel=1e-15)
    assert set(result.summary["local_clt_gap"]) == {"1", "2", "4"}


def test_kernels_convolution_limit_follows_the_horizon() -> None:
    result = kernels(_config("calib.n = 16\ncalib.beta = 0.1\nsweep.thetas = 0\n"))

    assert result.summary["convolution_limit"] == 16


@pytest.mark.parametrize("family", ["gaussian", "rademacher"])  # type: ignore
def test_calibration_round_trip(family: str) -> None:
    config = _config(f"disorder.family = {family}\ncalib.n = 1024\ncalib.theta = 1\nsweep.thetas = -2, 0, 1, 3\n")

    result = calibrate(config)

    assert result.failed == []
    assert list(result.table["theta"]) == [-2.0, 0.0, 1.0, 3.0]
    assert result.table["beta"].is_monotonic_increasing
    assert result.table["theta_roundtrip"].to_numpy() == pytest.approx([-2.0, 0.0, 1.0, 3.0], abs=1e-9)
    assert result.summary["theta"] == pytest.approx(1.0, abs=1e-9)


def test_calibrated_theta() -> None:
    assert calibrated_theta(_config("calib.n = 64\ncalib.theta = 1.5\n")) == 1.5

    with pytest.raises(DomainException, match="positive disorder strength"):
        calibrated_theta(_config("calib.n = 64\ncalib.beta = 0\n"))


def test_second_moment_table() -> None:
    result = second_moment(_config("calib.n = 256\ncalib.theta = 1\nsweep.thetas = 0, 1\n"))

    assert list(result.table["theta"]) == [0.0, 1.0]
    assert (result.table["second_moment"] > 1).all()
    assert (result.table["renewal_deviation"] <= 1e-10).all()
    assert [check.passed for check in result.checks if check.name.startswith("renewal")] == [True, True]
    assert result.summary["largest_ratio"] == pytest.approx(result.table["ratio"].max())


def test_truncated_variance() -> None:
    config = _config("calib.n = 256\ncalib.theta = 2\nsweep.horizons = 128, 256\nsweep.thetas = 2\n")

    result = truncated_variance(config)

    assert list(result.table["n"]) == [128, 256]
    assert result.summary["eta"] == pytest.approx(math.log(2))
    assert result.summary["K"] == math.floor(math.log(256))
    assert 0 < result.summary["c"] <= result.summary["c_prime"]
    assert result.summary["V_N_K"] <= result.summary["B_N"]
