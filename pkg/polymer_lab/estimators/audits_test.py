import numpy as np
import pytest
from polymer_lab.disorder import GaussianDisorder
from polymer_lab.moments import dirac
from polymer_lab.static import DomainException

from .audits import (
    change_of_measure_audit,
    change_of_scale_audit,
)
from .replicas import partition_samples


def test_change_of_measure_holds_replica_by_replica() -> None:
    blocks = partition_samples(GaussianDisorder(), 16, 0.8, dirac(), 256, seed=3)

    checks = change_of_measure_audit(blocks, seed=3, cap=2.0, batch_size=128)

    assert [check.name for check in checks] == ["change of measure, batch 0", "change of measure, batch 1"]
    assert all(check.passed and check.margin >= 0 for check in checks)


def test_change_of_measure_needs_a_cap_of_at_least_one() -> None:
    with pytest.raises(DomainException):
        change_of_measure_audit([np.ones(4), np.ones(4)], seed=1, cap=0.5)


def test_change_of_scale_without_disorder() -> None:
    audit = change_of_scale_audit(GaussianDisorder(), 16, 0.0, 1.0, 10, seed=1)

    assert audit.factor == 4.0
    assert audit.small.sup.estimate == audit.large.sup.estimate == 1.0
    assert audit.check.passed


def test_change_of_scale() -> None:
    audit = change_of_scale_audit(GaussianDisorder(), 16, 0.6, 1.0, 128, seed=2, grid_max=5)

    assert audit.check.passed
    assert len(audit.large.laws) == 6
