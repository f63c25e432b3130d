"""Exact second moments of point-to-plane and averaged partition functions.

Expanding ``Z_N(0)`` in polynomial chaos gives ``B(m) = E[Z_m(0)²] = sum_I sigma² ** |I| u(I)`` over subsets ``I``
of ``1..m``, where ``u(I)`` is the product of return masses over consecutive increments. Splitting on the last point of
``I`` yields the renewal recursion ``B(m) = 1 + sigma² sum_{j=1..m} u(j) B(m - j)``.
"""
import logging
import math
from dataclasses import dataclass
from typing import (
    Dict,
    NamedTuple,
    Optional,
)

import numpy as np
import pandas as pd
from polymer_lab import master_config
from polymer_lab.disorder import target_pair_variance
from polymer_lab.lattice import (
    KernelTable,
    renewal_subset_sums,
    return_masses,
)
from polymer_lab.static import (
    EULER_GAMMA,
    ConsistencyException,
    DomainException,
)

from .mass import (
    MassFunction,
    uniform_ball,
)
from .overlap import collision_kernel

logger = logging.getLogger("moments")


@dataclass(frozen=True, eq=False)
class MomentSeries:
    """Second moments ``B(m)`` for ``0 <= m <= n`` and optionally the truncated table ``V(m, K)``."""

    n: int
    sigma2: float
    b: np.ndarray
    truncation: Optional[int] = None
    v: Optional[np.ndarray] = None

    def to_frame(self) -> pd.DataFrame:
        """Export ``(m, B_m)`` or ``(m, B_m, V_m_K)`` rows."""
        df = pd.DataFrame({"m": np.arange(self.n + 1), "B_m": self.b})
        if self.v is not None:
            df["V_m_K"] = self.v
        return df

    def provenance(self) -> Dict[str, str]:
        """Header entries of the exported table."""
        header = {"n": str(self.n), "sigma2": repr(self.sigma2)}
        if self.truncation is not None:
            header["K"] = str(self.truncation)
        return header


def _check_sigma2(sigma2: float) -> None:
    if not math.isfinite(sigma2) or sigma2 <= -1:
        raise DomainException(f"Pair variance must be finite and above -1, got {sigma2}")


def second_moment_point(n: int, sigma2: float) -> MomentSeries:
    """Return ``B(0..n)`` by the renewal recursion.

    Args:
        n: Horizon.
        sigma2: Pair variance ``sigma²(beta)``; values in ``(-1, 0)`` are accepted for generating-function uses.

    Returns:
        Series with ``B(0) = 1``.

    """
    if n < 0:
        raise DomainException(f"Horizon must be non-negative, got {n}")
    _check_sigma2(sigma2)
    u = return_masses(n)
    b = np.empty(n + 1)
    b[0] = 1.0
    for m in range(1, n + 1):
        b[m] = 1.0 + sigma2 * np.dot(u[1 : m + 1], b[m - 1 :: -1])
    return MomentSeries(n, sigma2, b)


def second_moment_derivative(n: int, sigma2: float) -> np.ndarray:
    """Return ``dB(m) / d sigma²`` for ``m = 0..n``, differentiating the renewal recursion."""
    b = second_moment_point(n, sigma2).b
    u = return_masses(n)
    derivative = np.zeros(n + 1)
    for m in range(1, n + 1):
        derivative[m] = np.dot(u[1 : m + 1], b[m - 1 :: -1] + sigma2 * derivative[m - 1 :: -1])
    return derivative


def renewal_series_second_moment(n: int, sigma2: float) -> float:
    """Return ``B(n) = sum_k sigma² ** k R_n ** k P(tau_k <= n)`` summed over every ``k <= n``."""
    if n < 1:
        raise DomainException(f"Horizon must be at least 1, got {n}")
    subset_sums = renewal_subset_sums(n, n)
    return float(math.fsum(subset_sums * sigma2 ** np.arange(n + 1)))


def check_renewal_series(n: int, sigma2: float, tolerance: float = master_config.renewal_series_tolerance) -> float:
    """Compare the recursion with the renewal series.

    Returns:
        Relative deviation.

    Raises:
        ConsistencyException: If the deviation exceeds ``tolerance``.

    """
    recursion = float(second_moment_point(n, sigma2).b[n])
    series = renewal_series_second_moment(n, sigma2)
    deviation = abs(recursion - series) / abs(recursion)
    if deviation > tolerance:
        raise ConsistencyException(f"B({n}) from the recursion and the renewal series differ by {deviation:.3e}")
    return deviation


def second_moment_field(
    n: int, sigma2: float, f: MassFunction, table: Optional[KernelTable] = None, b: Optional[np.ndarray] = None
) -> float:
    """Return ``E[Z_N(f)²] = (sum f)² + sigma² sum_{i=1..N} q_2i(f, f) B(N - i)``.

    The constant term is the zeroth chaos of ``Z_N(f)²`` and equals ``1`` for a probability ``f``.

    Args:
        n: Horizon ``N``.
        sigma2: Pair variance.
        f: Initial mass.
        table: Kernel table providing windowed kernels, see :func:`~polymer_lab.moments.overlap.collision_kernel`.
        b: Precomputed ``B(0..N)``.

    Raises:
        WindowExceededException: If ``table`` is too small for the support of ``f``.

    """
    b = second_moment_point(n, sigma2).b if b is None else b
    q = collision_kernel(f, f, n, table)
    chaos = float(np.dot(q[1:], b[n - 1 :: -1])) if n > 0 else 0.0
    return f.total ** 2 + sigma2 * chaos


def paley_zygmund_floor(second_moment: float) -> float:
    """Return the lower bound ``E[Z ∧ 1] >= E[Z]² / (1 + E[Z²])`` for ``E[Z] = 1``."""
    return 1.0 / (1.0 + second_moment)


class QuasicriticalReport(NamedTuple):
    """Exact second moment of ``Z_N(U_sqrt(N))`` and its distance to ``exp(exp(theta - gamma))``."""

    n: int
    theta: float
    sigma2: float
    second_moment: float
    log_log_moment: float
    ratio: float
    paley_zygmund_floor: float


def quasicritical_bound_check(n: int, theta: float, table: Optional[KernelTable] = None) -> QuasicriticalReport:
    """Evaluate ``log log E[Z_N(U)²] - (theta - gamma)`` for the uniform ball ``U`` of radius ``sqrt(N)``.

    The pair variance is the calibrated ``1 / (R_N - theta / pi)``, which is independent of the disorder law.

    Raises:
        CalibrationRangeException: If ``theta >= pi R_N``.

    """
    sigma2 = target_pair_variance(n, theta)
    second_moment = second_moment_field(n, sigma2, uniform_ball(math.sqrt(n)), table)
    log_log_moment = math.log(math.log(second_moment))
    ratio = log_log_moment - (theta - EULER_GAMMA)
    logger.debug(f"Quasi-critical second moment at N={n}, theta={theta}: {second_moment:.6g} (ratio {ratio:.4f})")
    return QuasicriticalReport(
        n, theta, sigma2, second_moment, log_log_moment, ratio, paley_zygmund_floor(second_moment)
    )
