import json

import pytest
from polymer_lab.disorder import GaussianDisorder
from polymer_lab.static import DomainException

from .finite_volume import finite_volume_criterion


def test_criterion_fails_without_disorder() -> None:
    report = finite_volume_criterion(GaussianDisorder(), 16, 0.0, 10, seed=1)

    assert report.sup.estimate == 1.0
    assert not report.satisfied
    assert not report.near_threshold
    assert report.decay.empty
    assert report.decay_slope is None
    assert [check.name for check in report.checks] == ["half-scale half moment at most one"]
    assert report.checks[0].passed
    assert report.to_frame()["start"].iloc[-1].startswith("uniform")


def test_summary_is_serializable() -> None:
    report = finite_volume_criterion(GaussianDisorder(), 16, 0.8, 64, seed=2, grid_max=5)

    summary = json.loads(json.dumps(report.to_summary()))

    assert summary["L"] == 16
    assert summary["threshold"] == pytest.approx(1 / 300)
    assert len(report.to_frame()) == 6
    assert summary["sup"]["estimate"] <= 1


@pytest.mark.parametrize("scale, m_list", [(8, (1,)), (16, (0, 1))])  # type: ignore
def test_invalid_arguments(scale: int, m_list: tuple) -> None:
    with pytest.raises(DomainException):
        finite_volume_criterion(GaussianDisorder(), scale, 0.5, 10, seed=1, m_list=m_list)
