import itertools
import math
from typing import (
    List,
    Tuple,
)

import numpy as np
import pytest
from polymer_lab.disorder import (
    GaussianDisorder,
    RademacherDisorder,
)
from polymer_lab.engine import (
    DiamondField,
    partition_field,
    sample_field,
)
from polymer_lab.lattice import (
    slice_sites,
    step_kernel,
)
from polymer_lab.moments import dirac
from polymer_lab.static import (
    DomainException,
    ParityException,
    ProxyMode,
)

from .strips import StripDecomposition
from .value import (
    proxy_value,
    strip_values,
)

TOY_STRIPS = StripDecomposition(8, 8, 2, 1.0, 2)


def _strip_cells(s: int, t: int) -> List[Tuple[int, Tuple[int, int]]]:
    cells = []
    for n in range(s + 1, t + 1):
        x1, x2 = slice_sites(n)
        cells.extend((n, (int(a), int(b))) for a, b in zip(x1.ravel(), x2.ravel()))
    return cells


def _subset_oracle(field: DiamondField, beta: float, s: int, t: int, k_max: int) -> float:
    """Sum of q(A) xi(A) over cell sets of the strip with one cell per time and 1 <= |A| <= k_max."""
    lam = field.model.cumulant(beta)
    terms = []
    for k in range(1, k_max + 1):
        for subset in itertools.combinations(_strip_cells(s, t), k):
            times = [n for n, _ in subset]
            if len(set(times)) < k:
                continue
            weight, previous_time, previous_site = 1.0, 0, (0, 0)
            for n, y in subset:
                weight *= step_kernel(n - previous_time, (y[0] - previous_site[0], y[1] - previous_site[1]))
                weight *= math.expm1(beta * field.value(n, y) - lam)
                previous_time, previous_site = n, y
            terms.append(weight)
    return math.fsum(terms)


def test_zero_strength_gives_zero() -> None:
    field = sample_field(GaussianDisorder(), 16, seed=1)

    np.testing.assert_array_equal(strip_values(field, 0.0, StripDecomposition(16, 16, 4, 1.0, 2), None), 0.0)


@pytest.mark.parametrize("truncation", [1, 2])  # type: ignore
def test_truncated_proxy_against_subset_enumeration(truncation: int) -> None:
    field = sample_field(RademacherDisorder(), 8, seed=11)

    values = strip_values(field, 0.7, TOY_STRIPS, truncation, ProxyMode.truncated)

    expected = [_subset_oracle(field, 0.7, s, t, truncation) for s, t in TOY_STRIPS.even_strips()]
    np.testing.assert_allclose(values, expected, rtol=1e-12)


def test_every_order_gives_the_untruncated_proxy() -> None:
    field = sample_field(RademacherDisorder(), 8, seed=12)

    truncated = strip_values(field, 0.7, TOY_STRIPS, 2, ProxyMode.truncated)

    np.testing.assert_allclose(truncated, strip_values(field, 0.7, TOY_STRIPS), rtol=1e-12)


def test_untruncated_component_is_a_strip_partition_function() -> None:
    beta = 0.6
    field = sample_field(GaussianDisorder(), 12, seed=13)
    strips = StripDecomposition(12, 12, 6, math.log(2), 1)
    # neutral cells before the strip carry the weight exp(0)
    neutral = field.with_cells(
        {(n, x1, x2): field.model.cumulant(beta) / beta for n, (x1, x2) in _strip_cells(0, 6)}
    )

    expected = partition_field(neutral, beta, dirac()).total - 1

    assert strip_values(field, beta, strips)[0] == pytest.approx(expected, rel=1e-10)


def test_proxy_value_sums_the_even_strips() -> None:
    field = sample_field(GaussianDisorder(), 16, seed=14)
    strips = StripDecomposition(16, 16, 4, 1.0, 2)

    assert proxy_value(field, 0.5, strips) == pytest.approx(strip_values(field, 0.5, strips).sum(), rel=1e-14)


class TestErrors:
    def test_truncated_mode_is_limited_to_toy_sizes(self) -> None:
        field = sample_field(GaussianDisorder(), 16, seed=1)

        with pytest.raises(DomainException, match="limited"):
            strip_values(field, 0.5, StripDecomposition(16, 16, 4, 1.0, 2), 2, ProxyMode.truncated)

    def test_truncated_mode_needs_an_order(self) -> None:
        field = sample_field(GaussianDisorder(), 8, seed=1)

        with pytest.raises(DomainException):
            strip_values(field, 0.5, TOY_STRIPS, None, ProxyMode.truncated)

    def test_field_must_hold_the_even_sublattice(self) -> None:
        field = sample_field(GaussianDisorder(), 8, seed=1, radius=1, parity=1)

        with pytest.raises(ParityException):
            strip_values(field, 0.5, TOY_STRIPS)

    def test_field_must_cover_the_strips(self) -> None:
        field = sample_field(GaussianDisorder(), 6, seed=1)

        with pytest.raises(DomainException):
            strip_values(field, 0.5, TOY_STRIPS)
