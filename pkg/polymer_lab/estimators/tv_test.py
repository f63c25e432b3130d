import math

import pytest
from polymer_lab.disorder import GaussianDisorder
from polymer_lab.moments import (
    MassFunction,
    dirac,
    uniform_ball,
)
from polymer_lab.static import DomainException

from .tv import sizebias_tv


def test_both_routes_are_one_without_disorder() -> None:
    result = sizebias_tv(GaussianDisorder(), 64, 0.0, uniform_ball(8.0), 100, seed=1)

    assert result.truncated_mean.estimate == 1.0
    assert result.event_route.estimate == 1.0
    assert all(check.passed for check in result.checks)


def test_routes_agree() -> None:
    result = sizebias_tv(GaussianDisorder(), 32, 0.6, dirac(), 1024, seed=2)

    assert all(check.passed for check in result.checks)
    assert 0 < result.truncated_mean.estimate < 1
    assert result.event_route.estimate == pytest.approx(
        result.event_probability.estimate + result.tilted_complement_probability.estimate
    )
    assert result.event_route.stderr == pytest.approx(
        math.hypot(result.event_probability.stderr, result.tilted_complement_probability.stderr)
    )


def test_initial_condition_must_be_a_probability() -> None:
    with pytest.raises(DomainException):
        sizebias_tv(GaussianDisorder(), 8, 0.5, MassFunction.from_points({(0, 0): 2.0}), 10, seed=1)
