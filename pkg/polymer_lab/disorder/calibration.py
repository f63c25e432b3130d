import logging
import math

import numpy as np
from polymer_lab import master_config
from polymer_lab.lattice import overlap_sum
from polymer_lab.static import (
    CalibrationRangeException,
    ConsistencyException,
    CriticalPoint,
    DomainException,
    Theta,
)
from scipy.optimize import bisect

from .models import DisorderModel

logger = logging.getLogger("calibration")


def target_pair_variance(n: int, theta: float) -> float:
    """Return ``1 / (R_N - theta / pi)``, the pair variance realizing ``theta`` at horizon ``N``.

    Raises:
        CalibrationRangeException: If ``theta >= pi R_N``.

    """
    r_n = overlap_sum(n).r_n
    if theta >= math.pi * r_n:
        raise CalibrationRangeException(
            f"theta={theta} is beyond calibration range: it must stay below pi * R_N = {math.pi * r_n:.12g} for N={n}"
        )
    return 1.0 / (r_n - theta / math.pi)


def solve_beta(model: DisorderModel, n: int, theta: float) -> CriticalPoint:
    """Find the disorder strength with ``sigma²(beta) (R_N - theta / pi) = 1`` by bisection.

    The bracket starts at ``[calibration_beta_lower, 1]`` and its upper end is doubled until ``sigma²`` exceeds the
    target, up to ``calibration_beta_upper_limit``.

    Args:
        model: Environment law.
        n: Horizon ``N``.
        theta: Effective disorder parameter, below ``pi R_N``.

    Returns:
        Calibrated critical point.

    Raises:
        CalibrationRangeException: If ``theta >= pi R_N`` or the root lies outside the supported strength range.

    """
    target = target_pair_variance(n, theta)

    lower = master_config.calibration_beta_lower
    if model.pair_variance(lower) >= target:
        raise CalibrationRangeException(
            f"theta={theta} needs beta below {lower} for N={n}, which is outside the supported range"
        )

    upper = 1.0
    while model.pair_variance(upper) < target:
        upper *= 2
        if upper > master_config.calibration_beta_upper_limit:
            raise CalibrationRangeException(
                f"theta={theta} needs beta above {master_config.calibration_beta_upper_limit} for N={n} "
                f"with {model.family.value} disorder"
            )

    beta = bisect(
        lambda b: model.pair_variance(b) - target,
        lower,
        upper,
        xtol=1e-300,
        rtol=4 * np.finfo(float).eps,
        maxiter=master_config.calibration_max_iterations,
    )
    sigma2 = model.pair_variance(beta)
    if abs(sigma2 - target) > master_config.calibration_relative_tolerance * target:
        raise ConsistencyException(f"Bisection stopped at sigma²={sigma2!r}, target {target!r}")

    logger.debug(f"Calibrated {model.family.value} disorder for N={n}, theta={theta}: beta={beta:.15g}")
    return CriticalPoint(n=n, beta=float(beta), theta=theta, sigma2=sigma2)


def theta_of(model: DisorderModel, n: int, beta: float) -> Theta:
    """Return ``theta(N, beta) = pi R_N - pi / sigma²(beta)`` and ``exp(theta)``.

    ``exp(theta)`` is evaluated independently as ``exp(alpha_N) N exp(-pi / sigma²)``, both routes must agree.

    Args:
        model: Environment law.
        n: Horizon ``N``.
        beta: Disorder strength, non-negative.

    Returns:
        The pair, with ``value=None`` and ``exp_value=0`` for ``beta = 0`` (``theta = -inf``).

    Raises:
        DomainException: If ``beta < 0``.
        ConsistencyException: If both routes disagree by more than ``theta_route_tolerance``.

    """
    if beta < 0:
        raise DomainException(f"theta(N, beta) is defined for beta >= 0, got {beta}")
    if beta == 0:
        return Theta(value=None, exp_value=0.0)

    overlap = overlap_sum(n)
    sigma2 = model.pair_variance(beta)
    theta = math.pi * overlap.r_n - math.pi / sigma2
    exp_value = math.exp(overlap.alpha_n) * n * math.exp(-math.pi / sigma2)

    if exp_value > 0:
        deviation = abs(theta - math.log(exp_value))
        if deviation > master_config.theta_route_tolerance:
            raise ConsistencyException(f"theta routes disagree by {deviation:.3e} at N={n}, beta={beta}")

    return Theta(value=theta, exp_value=exp_value)
