"""Exponential moments of the collision local time ``L_N`` of two independent walks.

``L_N = sum_{n <= N} 1{S_n = S'_n}`` only depends on the difference walk ``D = S - S'``, whose rotated coordinates
move by independent steps ``-2, 0, +2`` with probabilities ``1/4, 1/2, 1/4``.
"""
import math
from typing import NamedTuple

import numpy as np
from polymer_lab import master_config
from polymer_lab.moments.second_moment import (
    second_moment_derivative,
    second_moment_point,
)
from polymer_lab.static import DomainException


class CollisionMoment(NamedTuple):
    """``E[exp(lambda L_N)]`` and ``E[L_N exp(lambda L_N)]`` in renormalized form, both scaled by ``exp(-log_norm)``."""

    value: float
    derivative: float
    log_norm: float = 0.0

    @property
    def exp_moment(self) -> float:
        """``E[exp(lambda L_N)]``."""
        return self.value * math.exp(self.log_norm)

    @property
    def l_exp_moment(self) -> float:
        """``E[L_N exp(lambda L_N)]``."""
        return self.derivative * math.exp(self.log_norm)

    @property
    def log_exp_moment(self) -> float:
        """``log E[exp(lambda L_N)]``, finite even when the moment itself overflows."""
        return math.log(self.value) + self.log_norm


def _lazy_step(values: np.ndarray) -> np.ndarray:
    padded = np.pad(values, 2)
    rows = 0.25 * padded[:-2] + 0.5 * padded[1:-1] + 0.25 * padded[2:]
    return 0.25 * rows[:, :-2] + 0.5 * rows[:, 1:-1] + 0.25 * rows[:, 2:]


def collision_moment(n: int, lambda2: float) -> CollisionMoment:
    """Evaluate both collision moments by dynamic programming over the difference walk.

    ``A_n(d) = E[exp(lambda L_n); D_n = d]`` and ``C_n(d) = E[L_n exp(lambda L_n); D_n = d]`` evolve under the
    difference kernel; at ``d = 0`` the collision multiplies ``A`` by ``exp(lambda)`` and turns ``C`` into
    ``exp(lambda) (C + A)``. Both tables are rescaled together when they leave the renormalization range.

    Args:
        n: Horizon ``N >= 1``.
        lambda2: Collision reward ``lambda``.

    Returns:
        Both moments.

    Raises:
        DomainException: If ``N < 1``.

    """
    if n < 1:
        raise DomainException(f"Collision moments need a horizon of at least 1, got {n}")
    reward = math.exp(lambda2)
    exp_table = np.ones((1, 1))
    l_table = np.zeros((1, 1))
    log_norm = 0.0
    for m in range(1, n + 1):
        exp_table = _lazy_step(exp_table)
        l_table = _lazy_step(l_table)
        l_table[m, m] = reward * (l_table[m, m] + exp_table[m, m])
        exp_table[m, m] *= reward
        peak = max(float(exp_table.max()), float(l_table.max()))
        if peak > master_config.renormalization_upper:
            total = float(exp_table.sum())
            exp_table /= total
            l_table /= total
            log_norm += math.log(total)
    return CollisionMoment(float(exp_table.sum()), float(l_table.sum()), log_norm)


def collision_moment_renewal(n: int, lambda2: float) -> CollisionMoment:
    """Evaluate both collision moments through the renewal structure of collision times.

    ``E[exp(lambda L_N)] = sum_k (exp(lambda) - 1) ** k sum_{|I| = k} u(I)`` is the point-to-plane second moment
    recursion with pair variance ``exp(lambda) - 1``; the second moment is its derivative in ``lambda``.
    """
    if n < 1:
        raise DomainException(f"Collision moments need a horizon of at least 1, got {n}")
    sigma2 = math.expm1(lambda2)
    value = float(second_moment_point(n, sigma2).b[n])
    derivative = math.exp(lambda2) * float(second_moment_derivative(n, sigma2)[n])
    return CollisionMoment(value, derivative)
