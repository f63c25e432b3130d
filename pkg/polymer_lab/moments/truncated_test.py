from fractions import Fraction

import numpy as np
import pytest
from polymer_lab.static import DomainException
from polymer_lab.test_utils import (
    chaos_product_exact,
    subset_return_mass_sum,
)

from .exact import (
    hat_moment_exact,
    truncated_variance_exact,
)
from .mass import (
    MassFunction,
    dirac,
    uniform_ball,
)
from .second_moment import (
    second_moment_field,
    second_moment_point,
)
from .truncated import (
    default_truncation,
    hat_moment,
    moment_series,
    subset_sums_by_order,
    truncated_variance,
    variance_bracket,
)

F_EXACT = {(0, 0): Fraction(1, 2), (1, 1): Fraction(1, 4), (2, 0): Fraction(1, 4)}
G_EXACT = {(0, 0): Fraction(1, 3), (-1, 1): Fraction(2, 3)}


def _to_float(exact: dict) -> MassFunction:
    return MassFunction.from_points({site: float(weight) for site, weight in exact.items()})


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (20, 2), (1000, 6)])  # type: ignore
def test_default_truncation(n: int, expected: int) -> None:
    assert default_truncation(n) == expected


def test_subset_sums_against_enumeration() -> None:
    sums = subset_sums_by_order(8, 4)

    for k in range(5):
        assert sums[k, 8] == pytest.approx(subset_return_mass_sum(8, k), rel=1e-12)
    # no k-subset fits into 1..m for m < k
    assert sums[3, 2] == 0.0


def test_single_order_keeps_the_empty_set_only() -> None:
    np.testing.assert_array_equal(truncated_variance(30, 0.7, 1), 1.0)


def test_exhausting_every_order_gives_the_full_moment() -> None:
    np.testing.assert_allclose(truncated_variance(25, 0.4, 26), second_moment_point(25, 0.4).b, rtol=1e-12)
    np.testing.assert_array_equal(truncated_variance(25, 0.4, None), second_moment_point(25, 0.4).b)


def test_against_subset_enumeration() -> None:
    sigma2 = Fraction(1, 2)
    expected = [float(value) for value in truncated_variance_exact(10, sigma2, 3)]

    np.testing.assert_allclose(truncated_variance(10, float(sigma2), 3), expected, rtol=1e-12)


def test_truncation_is_monotone() -> None:
    values = [truncated_variance(100, 0.3, k)[100] for k in range(1, 8)]

    assert values == sorted(values)
    assert values[-1] <= second_moment_point(100, 0.3).b[100]


def test_invalid_truncation() -> None:
    with pytest.raises(DomainException):
        truncated_variance(10, 0.3, 0)


def test_moment_series_export() -> None:
    series = moment_series(100, 0.2)

    assert series.truncation == 4
    assert list(series.to_frame().columns) == ["m", "B_m", "V_m_K"]
    assert series.provenance()["K"] == "4"


class TestHatMoment:
    def test_against_rational_arithmetic(self) -> None:
        sigma2 = Fraction(2, 7)

        expected = float(hat_moment_exact(8, sigma2, 2, F_EXACT, G_EXACT))

        assert hat_moment(8, float(sigma2), 2, _to_float(F_EXACT), _to_float(G_EXACT)).value == pytest.approx(
            expected, rel=1e-12
        )

    def test_against_the_chaos_expansion(self) -> None:
        sigma2 = Fraction(1, 2)

        expected = chaos_product_exact(3, sigma2, F_EXACT, G_EXACT, k_max=2)

        assert hat_moment_exact(3, sigma2, 2, F_EXACT, G_EXACT) == expected

    def test_untruncated_moment_is_the_covariance(self) -> None:
        f = uniform_ball(2.0)

        value = hat_moment(30, 0.25, None, f, f).value

        assert value == pytest.approx(second_moment_field(30, 0.25, f) - 1.0, rel=1e-12)

    @pytest.mark.parametrize("n, truncation", [(9, 1), (40, 3), (200, None)])  # type: ignore
    def test_sandwich_bounds(self, n: int, truncation: int) -> None:
        moment = hat_moment(n, 0.4, truncation, _to_float(F_EXACT), dirac())

        assert moment.holds
        assert moment.lower <= moment.upper

    def test_horizon_must_be_positive(self) -> None:
        with pytest.raises(DomainException):
            hat_moment(0, 0.4, 2, dirac(), dirac())


class TestVarianceBracket:
    def test_bracket_is_stable_across_horizons(self) -> None:
        df = variance_bracket(3.0, 1.0, [2 ** 11, 2 ** 12, 2 ** 13])

        assert list(df.columns) == ["n", "n_tilde", "K", "lower_ratio", "upper_ratio"]
        assert list(df["K"]) == [7, 8, 9]
        assert (df["lower_ratio"] > 0).all()
        assert (df["lower_ratio"] <= df["upper_ratio"]).all()
        for column in ("lower_ratio", "upper_ratio"):
            assert df[column].max() / df[column].min() <= 2.0

    def test_theta_must_exceed_eta(self) -> None:
        with pytest.raises(DomainException):
            variance_bracket(1.0, 1.0, [1024])
