"""Renewal density of the Dickman subordinator on ``(0, 1]``.

``G_0(t) = int_0^inf t^(s-1) e^(-gamma s) / Gamma(s) ds``, the density at ``t`` of the time spent by the subordinator
whose marginal at time ``s`` has density ``t^(s-1) e^(-gamma s) / Gamma(s)`` on ``(0, 1]``.
"""
import math
from typing import (
    NamedTuple,
    Sequence,
)

import numpy as np
from polymer_lab import master_config
from polymer_lab.static import (
    EULER_GAMMA,
    DomainException,
)
from scipy.integrate import quad
from scipy.special import (
    gammainc,
    gammaln,
)

#: Break points of the ``s``-integral; beyond the last one the integrand is bounded through Stirling's formula.
_SPLITS = (0.0, 1.0, 50.0)


class DickmanValue(NamedTuple):
    """Quadrature value with the sum of quadrature error estimates and the analytic tail bound."""

    value: float
    error: float
    tail_bound: float


def _stirling_tail_bound(rate: float) -> float:
    # Gamma increases on [2, inf) and Gamma(s) >= sqrt(2 pi / s) (s / e) ** s, so 1 / Gamma(s) <= 1 / Gamma(50)
    s = _SPLITS[-1]
    log_gamma_lower = 0.5 * math.log(2 * math.pi / s) + s * (math.log(s) - 1)
    return math.exp(-rate * s - log_gamma_lower) / rate


def dickman_density(t: float, quad_tol: float = master_config.dickman_quad_tolerance) -> DickmanValue:
    """Evaluate ``G_0(t)`` by adaptive quadrature on ``[0, 1]`` and ``[1, 50]``.

    For ``s >= 50`` the integrand is at most ``e^(-gamma s) / Gamma(50)``, which is reported as ``tail_bound``.

    Args:
        t: Point in ``(0, 1]``.
        quad_tol: Absolute error target shared by the two quadrature pieces.

    Returns:
        Value of the density with its error budget.

    Raises:
        DomainException: If ``t`` lies outside ``(0, 1]``.

    """
    if not 0 < t <= 1:
        raise DomainException(f"The Dickman density is evaluated on (0, 1], got t={t}")

    log_t = math.log(t)

    def integrand(s: float) -> float:
        if s == 0:
            return 0.0
        return math.exp((s - 1) * log_t - EULER_GAMMA * s - gammaln(s))

    value = 0.0
    error = 0.0
    for lower, upper in zip(_SPLITS[:-1], _SPLITS[1:]):
        piece, piece_error = quad(integrand, lower, upper, epsabs=quad_tol / 2, epsrel=0.0, limit=200)
        value += piece
        error += piece_error

    return DickmanValue(value, error, _stirling_tail_bound(EULER_GAMMA))


def dickman_laplace(rate: float, quad_tol: float = master_config.dickman_quad_tolerance) -> DickmanValue:
    """Return ``int_0^1 G_0(u) e^(-rate u) du``.

    The ``u``-integral is carried out in closed form: ``int_0^1 u^(s-1) e^(-rate u) du = rate^(-s) Gamma(s) P(s, rate)``
    with the regularized lower incomplete gamma function ``P``, which cancels ``Gamma(s)`` in the integrand.

    Args:
        rate: Positive rate ``lambda``, at least 1.
        quad_tol: Absolute error target of the ``s``-quadrature.

    Raises:
        DomainException: If ``rate < 1`` (the tail bound needs ``gamma + log rate > 0``).

    """
    if not rate >= 1:
        raise DomainException(f"The Dickman Laplace transform is evaluated for rate >= 1, got {rate}")

    log_rate = math.log(rate)

    def integrand(s: float) -> float:
        if s == 0:
            return 0.0
        return math.exp(-(EULER_GAMMA + log_rate) * s) * float(gammainc(s, rate))

    value = 0.0
    error = 0.0
    for lower, upper in zip(_SPLITS[:-1], _SPLITS[1:]):
        piece, piece_error = quad(integrand, lower, upper, epsabs=quad_tol / 2, epsrel=0.0, limit=200)
        value += piece
        error += piece_error

    decay = EULER_GAMMA + log_rate
    tail_bound = math.exp(-decay * _SPLITS[-1]) / decay
    return DickmanValue(value, error, tail_bound)


def dickman_laplace_constant(rates: Sequence[float]) -> float:
    """Smallest ``c`` with ``int_0^1 G_0(u) e^(-rate u) du <= c / (2 + log rate)`` on the given rates."""
    ratios = [dickman_laplace(rate).value * (2 + math.log(rate)) for rate in rates]
    return float(np.max(ratios))
