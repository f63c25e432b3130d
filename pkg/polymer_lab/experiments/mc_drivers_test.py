import math

import pytest
from polymer_lab.estimators.skeleton import TAIL_RADII

from .config import (
    ExperimentConfig,
    validate_text,
)
from .mc_drivers import (
    appendix_b,
    finite_volume,
    free_energy_experiment,
    proxy_report,
    skeleton_q,
    stretches,
    tv_identity,
)


def _config(text: str) -> ExperimentConfig:
    config, violations = validate_text(text)
    assert violations == []
    return config


def test_stretches() -> None:
    config = _config("calib.n = 64\ncalib.theta = 1\nrun.reps = 1000\nstretches.n_tilde = 40\nstretches.ell_max = 5\n")

    result = stretches(config)

    assert list(result.table.columns) == ["ell", "J", "stderr"]
    assert result.summary["N_tilde"] == 40
    assert [check.name for check in result.checks] == ["stretch decay slope <= log(1/2)"]
    assert result.blocks is None


@pytest.mark.slow  # type: ignore
def test_stretch_decay_on_a_wide_strip() -> None:
    config = _config("calib.n = 64\ncalib.theta = 1\nrun.reps = 10000\nrun.seed = 1\nstretches.n_tilde = 4096\n")

    result = stretches(config)

    j = result.table["J"].to_numpy()
    assert j[0] > 0.95
    assert all(first > second for first, second in zip(j, j[1:]))
    # the decay is geometric but slower than halving at this strip length
    assert result.summary["decay_slope"] == pytest.approx(-0.566, abs=0.01)
    (check,) = result.checks
    assert not check.passed
    assert check.margin == pytest.approx(math.log(0.5) + 0.566, abs=0.01)


def test_free_energy() -> None:
    config = _config("calib.n = 16\ncalib.beta = 1\nsweep.thetas = 0\nsweep.horizons = 8, 16\nrun.reps = 64\n")

    result = free_energy_experiment(config)

    assert list(result.table["N"]) == [8, 16]
    assert result.summary["critical_scale"] == pytest.approx(-math.pi / result.summary["sigma2"])
    assert "log free energy within 3 of -pi / sigma2" in [check.name for check in result.checks]
    assert result.blocks is not None
    assert set(result.blocks["quantity"]) == {"E[log Z_N] / N at N=8", "E[log Z_N] / N at N=16"}


def test_free_energy_without_disorder_has_no_band_check() -> None:
    config = _config("calib.n = 16\ncalib.beta = 0\nsweep.thetas = 0\nsweep.horizons = 8, 16\nrun.reps = 4\n")

    result = free_energy_experiment(config)

    assert "log free energy within 3 of -pi / sigma2" not in [check.name for check in result.checks]
    assert result.summary["critical_scale"] is None


def test_tv_identity() -> None:
    config = _config("calib.n = 16\ncalib.beta = 0.6\nsweep.thetas = 0\nrun.reps = 256\nrun.seed = 2\n")

    result = tv_identity(config)
    estimates = dict(zip(result.table["quantity"], result.table["estimate"]))

    assert list(result.table["quantity"]) == [
        "E[Z ∧ 1]",
        "E[Z^0.5]",
        "P(Z >= 1)",
        "P~(Z < 1)",
        "P(Z >= 1) + P~(Z < 1)",
    ]
    assert estimates["P(Z >= 1) + P~(Z < 1)"] == pytest.approx(estimates["P(Z >= 1)"] + estimates["P~(Z < 1)"])
    assert estimates["E[Z ∧ 1]"] <= estimates["E[Z^0.5]"]
    assert result.summary["gamma"] == 0.5


def test_appendix_b() -> None:
    config = _config("calib.n = 16\ncalib.theta = 1\nsweep.thetas = 0\nsweep.horizons = 8, 16\nrun.reps = 16\n")

    result = appendix_b(config)
    checks = {check.name: check for check in result.checks}

    assert list(result.table["N"]) == [8, 16]
    assert checks["mean collision count equals R_N at N=8"].passed
    assert checks["mean collision count equals R_N at N=16"].passed
    assert checks["collision moment routes agree at N=16"].passed
    assert result.table["lambda2"].to_numpy() == pytest.approx(list(map(math.log1p, result.table["sigma2"])))
    assert result.summary["collision_ratio_spread"] is not None


@pytest.mark.slow  # type: ignore
def test_finite_volume() -> None:
    config = _config(
        "calib.n = 16\ncalib.beta = 0.8\nsweep.thetas = 0\nrun.reps = 64\nvolume.grid_max = 5\nvolume.m_list = 1, 2\n"
    )

    result = finite_volume(config)

    assert list(result.table.columns) == ["start", "estimate", "stderr"]
    assert "change_of_scale" in result.summary
    assert result.blocks is not None
    assert list(result.blocks["quantity"].unique()) == list(result.table["start"])


@pytest.mark.slow  # type: ignore
def test_proxy_report() -> None:
    config = _config("calib.n = 64\ncalib.theta = 2\nsweep.thetas = 0\nrun.reps = 256\nproxy.grid_max = 9\n")

    result = proxy_report(config)

    assert result.summary["theta"] == 2.0
    assert set(result.summary["event_bound_sum"]) == {"estimate", "stderr"}
    assert result.blocks is not None
    assert "tilted complement probability" in set(result.blocks["quantity"])


@pytest.mark.slow  # type: ignore
def test_skeleton_q() -> None:
    config = _config(
        "calib.n = 16\ncalib.beta = 0.5\nsweep.thetas = 0\nskeleton.n0 = 16\nrun.reps = 32\nvolume.grid_max = 5\n"
    )

    result = skeleton_q(config)
    checks = {check.name: check for check in result.checks}

    assert result.table["l1"].max() == max(6, max(TAIL_RADII))
    assert (result.table["tail_bound"] <= 1).all()
    assert checks["bookkeeping sum below exp(-1)"].passed
