import math

import numpy as np
import pytest
from polymer_lab.disorder import GaussianDisorder
from polymer_lab.moments import (
    MassFunction,
    dirac,
    uniform_ball,
)
from polymer_lab.static import (
    DomainException,
    McSummary,
)

from .fractional import (
    fractional_moment,
    paley_zygmund_check,
    sandwich_checks,
    truncated_mean,
)


def test_truncated_mean_without_disorder() -> None:
    summary = truncated_mean(GaussianDisorder(), 32, 0.0, dirac(), 200, seed=1)

    assert summary.estimate == 1.0
    assert summary.stderr == 0.0
    assert summary.reps == 200


def test_truncated_mean_is_above_the_paley_zygmund_floor() -> None:
    model, beta, f = GaussianDisorder(), 0.5, uniform_ball(math.sqrt(32))

    summary = truncated_mean(model, 32, beta, f, 512, seed=2)

    assert 0 < summary.estimate < 1
    assert paley_zygmund_check(summary, 32, model.pair_variance(beta), f).passed


def test_truncated_mean_needs_a_probability() -> None:
    with pytest.raises(DomainException):
        truncated_mean(GaussianDisorder(), 8, 0.5, MassFunction.from_points({(0, 0): 0.5}), 10, seed=1)


@pytest.mark.parametrize("gamma", [-0.1, 1.5])  # type: ignore
def test_gamma_outside_the_unit_interval(gamma: float) -> None:
    with pytest.raises(DomainException):
        fractional_moment(GaussianDisorder(), 8, 0.5, dirac(), gamma, 10, seed=1)


def test_zeroth_moment_is_one() -> None:
    result = fractional_moment(GaussianDisorder(), 16, 0.6, dirac(), 0.0, 100, seed=3)

    assert result.moment.estimate == 1.0
    assert result.moment.stderr == 0.0


def test_first_moment_is_one_on_average() -> None:
    result = fractional_moment(GaussianDisorder(), 32, 0.4, uniform_ball(2.0), 1.0, 512, seed=4)

    assert abs(result.moment.estimate - 1) <= 4 * result.moment.stderr


def test_half_moment_sits_in_the_sandwich() -> None:
    result = fractional_moment(GaussianDisorder(), 32, 0.6, dirac(), 0.5, 1024, seed=5)

    assert result.truncated_mean.estimate <= result.moment.estimate
    assert result.moment.estimate <= math.sqrt(2 * result.truncated_mean.estimate)
    assert [check.name for check in result.checks] == ["sandwich lower, batch 0", "sandwich upper, batch 0"]
    assert all(check.passed for check in result.checks)


def test_sandwich_is_audited_per_batch() -> None:
    rng = np.random.default_rng(0)
    blocks = [rng.exponential(size=64) for _ in range(8)]

    checks = sandwich_checks(blocks, seed=0, batch_size=256)

    assert len(checks) == 4
    assert all(check.passed for check in checks)


def test_paley_zygmund_check_fails_below_the_floor() -> None:
    check = paley_zygmund_check(McSummary(0.1, 0.01, 100, 1), 16, 0.5, dirac())

    assert not check.passed
    assert check.margin < 0
