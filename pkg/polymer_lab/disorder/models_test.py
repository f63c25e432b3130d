import math

import numpy as np
import pytest
from polymer_lab.services import stream
from polymer_lab.static import (
    DisorderFamily,
    DomainException,
)
from scipy.stats import ks_2samp

from .models import (
    BoundedUniformDisorder,
    DisorderModel,
    GaussianDisorder,
    RademacherDisorder,
    disorder_model,
    tilted_sample,
)

ALL_MODELS = [GaussianDisorder(), RademacherDisorder(), BoundedUniformDisorder()]
MODEL_IDS = [model.family.value for model in ALL_MODELS]


@pytest.mark.parametrize("model", ALL_MODELS, ids=MODEL_IDS)  # type: ignore
class TestEveryModel:
    def test_is_centred_with_unit_variance(self, model: DisorderModel) -> None:
        assert model.expectation(lambda w: w) == pytest.approx(0.0, abs=1e-10)
        assert model.expectation(lambda w: w * w) == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("beta", [0.1, 0.5, 1.3])  # type: ignore
    def test_normalized_weight_has_unit_mean(self, model: DisorderModel, beta: float) -> None:
        lam = model.cumulant(beta)

        assert model.expectation(lambda w: math.exp(beta * w - lam)) == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("beta", [0.1, 0.5, 1.3])  # type: ignore
    def test_pair_variance_matches_direct_quadrature(self, model: DisorderModel, beta: float) -> None:
        lam = model.cumulant(beta)

        direct = model.expectation(lambda w: math.expm1(beta * w - lam) ** 2)

        assert model.pair_variance(beta) == pytest.approx(direct, abs=1e-10)

    def test_zero_strength(self, model: DisorderModel) -> None:
        assert model.cumulant(0.0) == 0.0
        assert model.pair_variance(0.0) == 0.0

    def test_pair_variance_is_increasing(self, model: DisorderModel) -> None:
        values = [model.pair_variance(beta) for beta in np.linspace(0.05, 3.0, 40)]

        assert all(first < second for first, second in zip(values, values[1:]))

    def test_zero_tilt_keeps_the_law(self, model: DisorderModel) -> None:
        plain = model.sample(stream(5, 0, 0), 4000)
        tilted = model.tilted_sample(0.0, stream(5, 0, 1), 4000)

        assert ks_2samp(plain, tilted, method="asymp").pvalue > 1e-4

    def test_tilted_mean_matches_quadrature(self, model: DisorderModel) -> None:
        beta = 0.7
        lam = model.cumulant(beta)
        exact = model.expectation(lambda w: w * math.exp(beta * w - lam))

        draws = model.tilted_sample(beta, stream(9, 2, 0), 200_000)

        assert draws.mean() == pytest.approx(exact, abs=4 * draws.std() / math.sqrt(draws.size))

    def test_infinite_strength_is_rejected(self, model: DisorderModel) -> None:
        with pytest.raises(DomainException):
            model.cumulant(math.inf)


def test_gaussian_values() -> None:
    model = GaussianDisorder()

    assert model.cumulant(1.0) == 0.5
    assert model.pair_variance(1.0) == pytest.approx(math.e - 1, rel=1e-15)
    assert model.pair_variance(1e-3) / 1e-6 == pytest.approx(1.0, abs=1e-5)


@pytest.mark.parametrize("beta", [0.5, 1.3, 2.0])  # type: ignore
def test_gaussian_expectation_of_exponential_weights(beta: float) -> None:
    model = GaussianDisorder()

    assert model.expectation(lambda w: math.exp(2 * beta * w)) == pytest.approx(math.exp(2 * beta * beta), rel=1e-10)


def test_gaussian_pair_variance_overflow_is_a_domain_error() -> None:
    with pytest.raises(DomainException, match="overflows"):
        GaussianDisorder().pair_variance(30.0)


def test_rademacher_values() -> None:
    model = RademacherDisorder()

    assert model.cumulant(1.0) == pytest.approx(math.log(math.cosh(1.0)), rel=1e-14)
    assert model.cumulant(1.0) == pytest.approx(0.433781, abs=1e-6)
    assert model.plus_probability(1.0) == pytest.approx(math.e / (2 * math.cosh(1.0)))


def test_gaussian_tilted_sample_mean() -> None:
    draws = GaussianDisorder().tilted_sample(0.8, stream(1, 2, 0), 1_000_000)

    assert draws.mean() == pytest.approx(0.8, abs=4e-3)


def test_rademacher_tilted_plus_frequency() -> None:
    draws = RademacherDisorder().tilted_sample(1.0, stream(1, 2, 0), 1_000_000)

    assert np.mean(draws == 1.0) == pytest.approx(0.8808, abs=2e-3)


def test_bounded_uniform_cumulant_is_continuous_at_series_switch() -> None:
    model = BoundedUniformDisorder()
    switch = 0.1 / math.sqrt(3)

    assert model.cumulant(switch * (1 - 1e-9)) == pytest.approx(model.cumulant(switch * (1 + 1e-9)), rel=1e-8)


def test_bounded_uniform_tilted_values_stay_in_support() -> None:
    draws = BoundedUniformDisorder().tilted_sample(-2.5, stream(3, 2, 0), 10_000)

    assert draws.min() >= -math.sqrt(3)
    assert draws.max() <= math.sqrt(3)
    assert draws.mean() < 0


def test_single_tilted_sample_is_a_float() -> None:
    value = tilted_sample(RademacherDisorder(), 0.3, stream(1, 2, 5))

    assert value in (-1.0, 1.0)


@pytest.mark.parametrize("family", list(DisorderFamily))  # type: ignore
def test_factory_covers_every_family(family: DisorderFamily) -> None:
    assert disorder_model(family).family is family
