import math

import numpy as np
import pytest
from polymer_lab.disorder import target_pair_variance
from polymer_lab.lattice import (
    slice_sites,
    step_kernel,
)
from polymer_lab.moments import (
    MassFunction,
    second_moment_field,
)
from polymer_lab.static import (
    ParityException,
    WindowExceededException,
)

from .exact_moments import (
    proxy_exact_moments,
    strip_tilted_means,
    strip_variances,
    tilted_mean_grid,
)
from .strips import (
    StripDecomposition,
    make_strips,
)


def test_grid_of_starting_points() -> None:
    sites = tilted_mean_grid(4)

    assert len(sites) == 9
    assert tuple(sites[0]) == (0, 0)
    assert set(map(tuple, sites[1:5])) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert np.all((sites.sum(axis=1) % 2) == 0)


def test_large_grids_are_thinned() -> None:
    sites = tilted_mean_grid(400, max_sites=50)

    assert len(sites) == 50
    assert tuple(sites[0]) == (0, 0)
    assert np.all(np.square(sites).sum(axis=1) <= 400)


def test_zero_pair_variance() -> None:
    moments = proxy_exact_moments(make_strips(64, 1.0), 0.0)

    assert moments.variance == 0.0
    np.testing.assert_array_equal(moments.tilted_means, 0.0)


def test_strip_variance_is_a_field_second_moment() -> None:
    sigma2 = 0.3
    strips = StripDecomposition(8, 8, 4, math.log(2), 1)
    x1, x2 = slice_sites(4)
    sites = [(int(a), int(b)) for a, b in zip(x1.ravel(), x2.ravel())]
    entry = MassFunction.from_points({site: step_kernel(4, site) for site in sites})

    assert strip_variances(strips, sigma2)[0] == pytest.approx(second_moment_field(4, sigma2, entry) - 1, rel=1e-10)


@pytest.mark.parametrize("x", [(0, 0), (1, 1), (2, 0), (3, -1)])  # type: ignore
def test_tilted_mean_of_a_two_step_strip(x: tuple) -> None:
    sigma2 = 0.4
    strips = StripDecomposition(4, 4, 2, 1.0, 1)

    # one collision at time 3 or 4, or collisions at both times with one-step overlap u(1) = 1/4
    expected = sigma2 * (step_kernel(6, x) + step_kernel(8, x)) + sigma2 ** 2 * step_kernel(6, x) / 4

    assert strip_tilted_means(strips, sigma2, np.array([x]))[0, 0] == pytest.approx(expected, rel=1e-12)


def test_truncation_lowers_both_moments() -> None:
    strips = make_strips(256, 1.0)
    sigma2 = target_pair_variance(256, 2.0)

    full = proxy_exact_moments(strips, sigma2)
    truncated = proxy_exact_moments(strips, sigma2, truncation=2)

    assert truncated.variance < full.variance
    assert np.all(truncated.tilted_means <= full.tilted_means)


def test_grid_infimum_sits_away_from_the_origin() -> None:
    moments = proxy_exact_moments(make_strips(256, 1.0), 0.5)

    assert moments.tilted_inf == moments.tilted_means.min() > 0
    assert moments.argmin != (0, 0)
    assert moments.tilted_means[0] == moments.tilted_means.max()
    assert list(moments.to_frame().columns) == ["x1", "x2", "tilted_mean"]


def test_strip_means_decay_with_the_strip_index() -> None:
    n = 2 ** 12
    strips = make_strips(n, math.log(8))
    sigma2 = target_pair_variance(n, 3.0)

    means = strip_tilted_means(strips, sigma2, np.array([(0, 0)]))[0]

    assert strips.m == 4
    assert np.all(np.diff(means) < 0)
    assert 1.5 <= means[1] / means[3] <= 2.5


def test_variance_is_the_sum_over_strips() -> None:
    strips = make_strips(512, 1.0)

    moments = proxy_exact_moments(strips, 0.2)

    assert moments.variance == pytest.approx(strip_variances(strips, 0.2).sum(), rel=1e-15)
    assert moments.strip_variances[0] > moments.strip_variances[1]


def test_invalid_sites() -> None:
    strips = make_strips(16, 1.0)

    with pytest.raises(ParityException):
        strip_tilted_means(strips, 0.2, np.array([(1, 0)]))
    with pytest.raises(WindowExceededException):
        strip_tilted_means(strips, 0.2, np.array([(40, 0)]))
