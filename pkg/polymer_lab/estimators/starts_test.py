import numpy as np
import pytest
from polymer_lab.disorder import GaussianDisorder
from polymer_lab.moments import (
    dirac,
    uniform_ball,
)
from polymer_lab.static import DomainException

from .replicas import partition_samples
from .starts import (
    half_moment_supremum,
    start_grid,
    start_samples,
)


def test_start_grid() -> None:
    laws = start_grid(2.0, max_sites=3)

    assert [start.label for start in laws] == ["dirac(0,0)", "dirac(-1,1)", "dirac(-2,0)", "uniform(2)"]
    assert laws[-1].law.is_probability()


def test_columns_match_single_law_partition_functions() -> None:
    laws = [dirac(), dirac((1, 1)), uniform_ball(2.0)]

    blocks = start_samples(GaussianDisorder(), 12, 0.7, laws, 6, seed=2)

    origin = np.concatenate(partition_samples(GaussianDisorder(), 12, 0.7, dirac(), 6, seed=2))
    uniform = np.concatenate(partition_samples(GaussianDisorder(), 12, 0.7, uniform_ball(2.0), 6, seed=2))
    values = np.concatenate(blocks)
    np.testing.assert_allclose(values[:, 0], origin, rtol=1e-10)
    np.testing.assert_allclose(values[:, 2], uniform, rtol=1e-10)


def test_supremum_without_disorder() -> None:
    grid = half_moment_supremum(GaussianDisorder(), 16, 0.0, start_grid(3.0), 10, seed=1)

    assert grid.sup.estimate == 1.0
    assert grid.sup.stderr == 0.0
    assert grid.argmax.label == "dirac(0,0)"


def test_odd_laws_are_rejected() -> None:
    with pytest.raises(DomainException):
        start_samples(GaussianDisorder(), 8, 0.5, [dirac((1, 0))], 4, seed=1)
