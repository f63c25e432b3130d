"""Renewal of successive collision times: hitting probabilities ``P(tau_k <= n)`` and the renewal series of ``B(N)``."""
from dataclasses import dataclass

import numpy as np
from polymer_lab.static import (
    ConsistencyException,
    DomainException,
)

from .kernels import (
    overlap_sums,
    return_masses,
)


@dataclass(frozen=True)
class RenewalLaw:
    """Law of the inter-arrival time ``T`` on ``1..n`` with ``P(T = j) = u(j) / R_n``.

    ``mass[j]`` holds ``P(T = j)``, ``mass[0] = 0``.
    """

    horizon: int
    mass: np.ndarray

    def __post_init__(self) -> None:
        total = float(self.mass.sum())
        if abs(total - 1.0) > 1e-12:
            raise ConsistencyException(f"Renewal law masses sum to {total!r} instead of 1")
        if not np.all(self.mass[1:] > 0):
            raise ConsistencyException("Renewal law masses must be positive on 1..n")


def renewal_law(n: int) -> RenewalLaw:
    """Build the renewal law of horizon ``n``.

    Raises:
        DomainException: If ``n < 1``.

    """
    if n < 1:
        raise DomainException(f"Renewal laws need a horizon of at least 1, got {n}")
    mass = return_masses(n).copy()
    mass[0] = 0.0
    mass /= overlap_sums(n)[n]
    return RenewalLaw(n, mass)


def renewal_arrival_laws(n: int, k_max: int) -> np.ndarray:
    """Return ``P(tau_k = m)`` for ``k = 0..k_max`` and ``m = 0..n``, with ``tau_k`` the ``k``-th arrival.

    Row ``k`` is the ``k``-fold convolution of :func:`renewal_law` truncated to ``0..n``; mass beyond ``n`` is dropped.
    """
    mass = renewal_law(n).mass
    laws = np.zeros((k_max + 1, n + 1))
    laws[0, 0] = 1.0
    for k in range(1, k_max + 1):
        laws[k] = np.convolve(laws[k - 1], mass)[: n + 1]
    return laws


def renewal_hit_prob(k: int, n: int) -> float:
    """Return ``P(tau_k <= n)`` for the renewal with law :func:`renewal_law` of horizon ``n``.

    ``R_n ** k * P(tau_k <= n)`` equals the sum of ``u(I)`` over all ``k``-subsets ``I`` of ``1..n``.

    Raises:
        DomainException: If ``k < 0`` or ``n < 1``.

    """
    if k < 0:
        raise DomainException(f"Arrival index must be non-negative, got {k}")
    if n < 1:
        raise DomainException(f"Renewal horizon must be at least 1, got {n}")
    if k == 0:
        return 1.0
    if k > n:
        return 0.0
    return float(renewal_arrival_laws(n, k)[k].sum())


def renewal_subset_sums(n: int, k_max: int) -> np.ndarray:
    """Return ``sum_{|I| = k, I ⊆ 1..n} u(I)`` for ``k = 0..k_max`` via ``R_n ** k * P(tau_k <= n)``."""
    r_n = float(overlap_sums(n)[n])
    hits = renewal_arrival_laws(n, k_max).sum(axis=1)
    return hits * r_n ** np.arange(k_max + 1)
