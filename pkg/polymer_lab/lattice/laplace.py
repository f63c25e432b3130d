"""Laplace transform of the return masses, summed up to a certified geometric remainder."""
import math
from typing import NamedTuple

import numpy as np
from polymer_lab.static import DomainException

from .kernels import return_masses


class LaplaceOverlap(NamedTuple):
    """Truncated Laplace transform of the return masses with its truncation certificate."""

    value: float
    terms: int
    tail_bound: float


def laplace_overlap(rate: float, tail_tol: float = 1e-15) -> LaplaceOverlap:
    """Return ``sum_{n >= 1} exp(-rate n) u(n)``.

    The sum stops after ``m`` terms once the geometric envelope ``u(m + 1) e^{-rate (m + 1)} / (1 - e^{-rate})`` of
    the remainder, valid since ``u`` is decreasing, falls below ``tail_tol``.

    Args:
        rate: Positive rate ``lambda``.
        tail_tol: Bound on the neglected remainder.

    Returns:
        Value, number of summed terms and the certified remainder bound.

    Raises:
        DomainException: If ``rate <= 0``.

    """
    if not rate > 0:
        raise DomainException(f"Laplace transforms need a positive rate, got {rate}")

    geometric_factor = 1.0 / -math.expm1(-rate)
    length = 1024
    while True:
        u = return_masses(length)
        n = np.arange(length + 1)
        envelope = u * np.exp(-rate * n) * geometric_factor
        below = np.nonzero(envelope[2:] <= tail_tol)[0]
        if below.size:
            terms = int(below[0]) + 1
            value = math.fsum(u[1 : terms + 1] * np.exp(-rate * n[1 : terms + 1]))
            return LaplaceOverlap(value, terms, float(envelope[terms + 1]))
        length *= 2
