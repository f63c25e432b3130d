import math

import numpy as np
import pytest
from polymer_lab.disorder import GaussianDisorder
from polymer_lab.lattice import (
    kernel_slice,
    slice_sites,
)
from polymer_lab.static import DomainException

from .skeleton import (
    bookkeeping_sum,
    displacements,
    gaussian_tail,
    skeleton_estimates,
    skeleton_q,
)


def test_bookkeeping_sum_stays_below_one_over_e() -> None:
    assert bookkeeping_sum(6) == pytest.approx(0.34151, abs=1e-4)
    assert bookkeeping_sum(6) < math.exp(-1)


def test_displacements() -> None:
    points = displacements(6)

    assert len(points) == 2 * 36 + 2 * 6 + 1
    assert points[0] == (0, 0)
    assert sorted(abs(y1) + abs(y2) for y1, y2 in points) == [abs(y1) + abs(y2) for y1, y2 in points]


def test_gaussian_tail() -> None:
    assert gaussian_tail((1, 1)) == 1.0
    assert gaussian_tail((4, 0)) == pytest.approx(math.exp(-1))
    assert gaussian_tail((-3, 3)) == pytest.approx(math.exp(-4))


def test_central_weight_without_disorder() -> None:
    x1, x2 = slice_sites(16)
    from_origin = math.sqrt(kernel_slice(16, 16)[x1 ** 2 + x2 ** 2 <= 4].sum())

    q = skeleton_q(GaussianDisorder(), 16, 0.0, (0, 0), 4, seed=1)

    assert from_origin - 1e-12 <= q.estimate < 1
    assert q.stderr == pytest.approx(0.0, abs=1e-12)


def test_tail_is_certified_on_far_targets() -> None:
    estimate = skeleton_estimates(GaussianDisorder(), 16, 0.5, [(0, 0), (4, 0), (3, -3)], 64, seed=2, grid_max=5)

    names = [check.name for check in estimate.checks]
    assert names == ["Gaussian tail of Q at y=(4, 0)", "Gaussian tail of Q at y=(3, -3)"]
    assert all(check.passed for check in estimate.checks)
    assert estimate.q((0, 0)).estimate > estimate.q((4, 0)).estimate
    frame = estimate.to_frame()
    np.testing.assert_array_equal(frame["l1"], [0, 4, 6])
    assert estimate.to_summary()["sum_q"] == pytest.approx(frame["q"].sum())


def test_scale_too_small() -> None:
    with pytest.raises(DomainException):
        skeleton_q(GaussianDisorder(), 8, 0.5, (0, 0), 4, seed=1)
