"""Laws of the environment.

Each law is centred with unit variance and has a finite cumulant ``lambda(beta) = log E[exp(beta omega)]`` for every
real ``beta``. Values are produced by inverse distribution functions from uniforms, which keeps every field cell a
deterministic function of one uniform of a counter-based stream.
"""
import math
from abc import (
    ABC,
    abstractmethod,
)
from dataclasses import dataclass
from typing import (
    Callable,
    ClassVar,
)

import numpy as np
from polymer_lab.services import open_uniforms
from polymer_lab.static import (
    DisorderFamily,
    DomainException,
)
from scipy.integrate import quad
from scipy.special import ndtri
from scipy.stats import norm

_SQRT3 = math.sqrt(3.0)
_QUAD_TOLERANCE = 1e-13
#: The standard normal density underflows to zero outside this window.
_GAUSSIAN_WINDOW = 40.0
_GAUSSIAN_BREAKPOINTS = (-4.0, 0.0, 4.0)


class DisorderModel(ABC):
    """Centred, unit-variance law of a single environment value."""

    family: ClassVar[DisorderFamily]

    @abstractmethod
    def cumulant(self, beta: float) -> float:
        """Return ``lambda(beta) = log E[exp(beta omega)]``."""

    @abstractmethod
    def quantile(self, u: np.ndarray) -> np.ndarray:
        """Inverse distribution function, maps uniforms on ``(0, 1)`` to environment values."""

    @abstractmethod
    def tilted_quantile(self, u: np.ndarray, beta: float) -> np.ndarray:
        """Inverse distribution function of the tilted law ``exp(beta omega - lambda(beta)) dP``."""

    @abstractmethod
    def expectation(self, g: Callable[[float], float]) -> float:
        """Return ``E[g(omega)]`` by quadrature or exact summation."""

    def pair_variance(self, beta: float) -> float:
        """Return ``sigma²(beta) = Var(exp(beta omega - lambda(beta))) = exp(lambda(2 beta) - 2 lambda(beta)) - 1``.

        Raises:
            DomainException: If the value is not representable as a float.

        """
        _check_beta(beta)
        try:
            return math.expm1(self.cumulant(2 * beta) - 2 * self.cumulant(beta))
        except OverflowError:
            raise DomainException(f"sigma²(beta) overflows at beta={beta} for {self.family.value} disorder")

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw ``size`` independent environment values."""
        return self.quantile(open_uniforms(rng, size))

    def tilted_sample(self, beta: float, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw ``size`` independent values of the exponentially tilted law."""
        _check_beta(beta)
        return self.tilted_quantile(open_uniforms(rng, size), beta)

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


def _check_beta(beta: float) -> None:
    if not math.isfinite(beta):
        raise DomainException(f"Disorder strength must be finite, got {beta}")


@dataclass(frozen=True, repr=False)
class GaussianDisorder(DisorderModel):
    """Standard normal environment, ``lambda(beta) = beta² / 2``."""

    family: ClassVar[DisorderFamily] = DisorderFamily.gaussian

    def cumulant(self, beta: float) -> float:
        _check_beta(beta)
        return beta * beta / 2

    def quantile(self, u: np.ndarray) -> np.ndarray:
        return ndtri(u)

    def tilted_quantile(self, u: np.ndarray, beta: float) -> np.ndarray:
        # completing the square: the tilted law is N(beta, 1)
        return ndtri(u) + beta

    def expectation(self, g: Callable[[float], float]) -> float:
        value, _ = quad(
            lambda x: g(x) * norm.pdf(x),
            -_GAUSSIAN_WINDOW,
            _GAUSSIAN_WINDOW,
            points=_GAUSSIAN_BREAKPOINTS,
            epsabs=_QUAD_TOLERANCE,
            limit=200,
        )
        return float(value)


@dataclass(frozen=True, repr=False)
class RademacherDisorder(DisorderModel):
    """Symmetric ``+-1`` environment, ``lambda(beta) = log cosh beta``."""

    family: ClassVar[DisorderFamily] = DisorderFamily.rademacher

    def cumulant(self, beta: float) -> float:
        _check_beta(beta)
        b = abs(beta)
        if b == 0:
            return 0.0
        return b + math.log1p(math.exp(-2 * b)) - math.log(2)

    def plus_probability(self, beta: float) -> float:
        """Probability of ``+1`` under the law tilted by ``beta``."""
        return (1 + math.tanh(beta)) / 2

    def quantile(self, u: np.ndarray) -> np.ndarray:
        return self.tilted_quantile(u, 0.0)

    def tilted_quantile(self, u: np.ndarray, beta: float) -> np.ndarray:
        return np.where(np.asarray(u) < self.plus_probability(beta), 1.0, -1.0)

    def expectation(self, g: Callable[[float], float]) -> float:
        return (g(1.0) + g(-1.0)) / 2


@dataclass(frozen=True, repr=False)
class BoundedUniformDisorder(DisorderModel):
    """Uniform environment on ``[-sqrt 3, sqrt 3]``, ``lambda(beta) = log(sinh(sqrt 3 beta) / (sqrt 3 beta))``."""

    family: ClassVar[DisorderFamily] = DisorderFamily.bounded_uniform

    #: Coefficients of ``log(sinh y / y) = sum_k c_k y^(2k)``, used for ``y < 0.1``.
    _SERIES: ClassVar[tuple] = (1 / 6, -1 / 180, 1 / 2835, -1 / 37800, 1 / 467775)

    def cumulant(self, beta: float) -> float:
        _check_beta(beta)
        y = _SQRT3 * abs(beta)
        if y < 0.1:
            y2 = y * y
            return sum(coefficient * y2 ** (k + 1) for k, coefficient in enumerate(self._SERIES))
        return y + math.log1p(-math.exp(-2 * y)) - math.log(2 * y)

    def quantile(self, u: np.ndarray) -> np.ndarray:
        return _SQRT3 * (2 * np.asarray(u) - 1)

    def tilted_quantile(self, u: np.ndarray, beta: float) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if beta == 0:
            return self.quantile(u)
        if beta < 0:
            return -self.tilted_quantile(1 - u, -beta)
        # inverse of the distribution function of the density proportional to exp(beta w) on [-sqrt 3, sqrt 3]
        return _SQRT3 + np.log(u + (1 - u) * math.exp(-2 * _SQRT3 * beta)) / beta

    def expectation(self, g: Callable[[float], float]) -> float:
        value, _ = quad(g, -_SQRT3, _SQRT3, epsabs=_QUAD_TOLERANCE, limit=200)
        return float(value) / (2 * _SQRT3)


_MODELS = {
    DisorderFamily.gaussian: GaussianDisorder,
    DisorderFamily.rademacher: RademacherDisorder,
    DisorderFamily.bounded_uniform: BoundedUniformDisorder,
}


def disorder_model(family: DisorderFamily) -> DisorderModel:
    """Return the model of a :class:`~polymer_lab.static.DisorderFamily`."""
    return _MODELS[family]()


def tilted_sample(model: DisorderModel, beta: float, rng: np.random.Generator) -> float:
    """Draw one value of the law ``exp(beta omega - lambda(beta)) dP``."""
    return float(model.tilted_sample(beta, rng, 1)[0])
