"""Second moments of the partition function with its chaos expansion truncated to low orders."""
import logging
import math
from typing import (
    NamedTuple,
    Optional,
    Sequence,
)

import numpy as np
import pandas as pd
from polymer_lab.disorder import target_pair_variance
from polymer_lab.lattice import (
    KernelTable,
    return_masses,
)
from polymer_lab.static import DomainException

from .mass import MassFunction
from .overlap import collision_kernel
from .second_moment import (
    MomentSeries,
    second_moment_point,
)

logger = logging.getLogger("moments")


def default_truncation(n: int) -> int:
    """Default chaos truncation ``K = floor(log N)``."""
    return max(1, int(math.floor(math.log(n)))) if n > 1 else 1


def subset_sums_by_order(n: int, k_max: int) -> np.ndarray:
    """Return ``T[k, m] = sum_{|I| = k, I ⊆ 1..m} u(I)`` for ``k = 0..k_max`` and ``m = 0..n``.

    ``P_k(j)``, the sum over ``k``-subsets with largest element ``j``, is the ``k``-fold direct convolution of ``u`` on
    ``1..n``; ``T_k`` is its cumulative sum.
    """
    if k_max < 0:
        raise DomainException(f"Chaos order must be non-negative, got {k_max}")
    step = return_masses(n).copy()
    step[0] = 0.0
    last_point = np.zeros(n + 1)
    last_point[0] = 1.0
    sums = np.zeros((k_max + 1, n + 1))
    sums[0] = 1.0
    for k in range(1, k_max + 1):
        last_point = np.convolve(last_point, step)[: n + 1]
        sums[k] = np.cumsum(last_point)
    return sums


def truncated_variance(n: int, sigma2: float, truncation: Optional[int]) -> np.ndarray:
    """Return ``V(m, K) = sum_{k < K} sigma² ** k sum_{|I| = k, I ⊆ 1..m} u(I)`` for ``m = 0..n``.

    Args:
        n: Horizon.
        sigma2: Pair variance.
        truncation: Number ``K >= 1`` of kept chaos orders, ``None`` keeps every order and returns ``B``.

    Raises:
        DomainException: If ``K < 1``.

    """
    if truncation is None:
        return second_moment_point(n, sigma2).b
    if truncation < 1:
        raise DomainException(f"Chaos truncation must be at least 1, got {truncation}")
    orders = min(truncation - 1, n)
    sums = subset_sums_by_order(n, orders)
    powers = sigma2 ** np.arange(orders + 1)
    return powers @ sums


def moment_series(n: int, sigma2: float, truncation: Optional[int] = None) -> MomentSeries:
    """Return ``B`` together with the truncated table ``V(., K)``, ``K`` defaulting to ``floor(log n)``."""
    truncation = default_truncation(n) if truncation is None else truncation
    b = second_moment_point(n, sigma2).b
    return MomentSeries(n, sigma2, b, truncation, truncated_variance(n, sigma2, truncation))


class HatMoment(NamedTuple):
    """``E[Z^(f) Z^(g)]`` for the chaos components of order ``1..K`` and its sandwich bounds."""

    value: float
    lower: float
    upper: float

    @property
    def holds(self) -> bool:
        """Return ``True`` if ``lower <= value <= upper`` up to rounding."""
        slack = 1e-12 * max(abs(self.upper), 1.0)
        return self.lower - slack <= self.value <= self.upper + slack


def hat_moment(
    n: int,
    sigma2: float,
    truncation: Optional[int],
    f: MassFunction,
    g: MassFunction,
    table: Optional[KernelTable] = None,
) -> HatMoment:
    """Return ``sigma² sum_{i=1..n} q_2i(f, g) V(n - i, K)`` with ``sigma² V(n/2) G_{n/2}`` and ``sigma² V(n) G_n``.

    Raises:
        WindowExceededException: If ``table`` is too small for the supports.

    """
    if n < 1:
        raise DomainException(f"Horizon must be at least 1, got {n}")
    v = truncated_variance(n, sigma2, truncation)
    q = collision_kernel(f, g, n, table)
    value = sigma2 * float(np.dot(q[1:], v[n - 1 :: -1]))
    half = n // 2
    lower = sigma2 * float(v[half]) * float(np.sum(q[1 : half + 1]))
    upper = sigma2 * float(v[n]) * float(np.sum(q[1:]))
    return HatMoment(value, lower, upper)


def variance_bracket(theta: float, eta: float, horizons: Sequence[int]) -> pd.DataFrame:
    """Tabulate ``sigma² V(N~/2, K)`` and ``sigma² V(N~, K)`` against ``exp(theta - eta) / (theta - eta)``.

    For every horizon ``N`` the calibrated pair variance at ``theta``, the strip length ``N~ = floor(exp(-eta) N)`` and
    ``K = floor(log N)`` are used. The fitted constants are the extreme ratios over all horizons.

    Returns:
        Columns ``n, n_tilde, K, lower_ratio, upper_ratio``.

    Raises:
        DomainException: If ``theta <= eta``.

    """
    if theta <= eta:
        raise DomainException(f"Bracket needs theta > eta, got theta={theta}, eta={eta}")
    scale = math.exp(theta - eta) / (theta - eta)
    rows = []
    for n in horizons:
        n_tilde = int(math.floor(math.exp(-eta) * n))
        sigma2 = target_pair_variance(n, theta)
        truncation = default_truncation(n)
        v = truncated_variance(n_tilde, sigma2, truncation)
        rows.append(
            {
                "n": n,
                "n_tilde": n_tilde,
                "K": truncation,
                "lower_ratio": sigma2 * float(v[n_tilde // 2]) / scale,
                "upper_ratio": sigma2 * float(v[n_tilde]) / scale,
            }
        )
    df = pd.DataFrame(rows)
    logger.debug(
        f"Variance bracket at theta={theta}, eta={eta}: c={df['lower_ratio'].min():.4f}, "
        f"c'={df['upper_ratio'].max():.4f}"
    )
    return df
