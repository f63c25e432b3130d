"""Transition kernels and return masses of the simple random walk on ℤ².

The walk factorizes in rotated coordinates ``a = x1 + x2``, ``b = x1 - x2`` into two independent ``+-1`` walks, so
``q_n(x) = p_n(a) p_n(b)`` with ``p_n`` the law of a one dimensional simple random walk, and
``u(n) = P(S_2n = 0) = c_n ** 2`` with the central binomial mass ``c_n = C(2n, n) / 4 ** n``.
"""
import logging
import math
from dataclasses import (
    dataclass,
    field,
)
from fractions import Fraction
from functools import lru_cache
from typing import (
    Dict,
    Iterator,
    NamedTuple,
    Sequence,
    Tuple,
)

import numpy as np
import pandas as pd
from polymer_lab import master_config
from polymer_lab.static import (
    OVERLAP_ALPHA,
    ConsistencyException,
    DomainException,
    KernelMode,
    WindowExceededException,
)
from scipy.stats import binom

from .geometry import (
    crop,
    slice_sites,
    step_forward,
)

logger = logging.getLogger("lattice")


class OverlapSum(NamedTuple):
    """Expected collision count ``R_N`` of two walks up to time ``N`` and ``alpha_N = pi * R_N - log N``."""

    r_n: float
    alpha_n: float

    @property
    def alpha_gap(self) -> float:
        """Distance of ``alpha_N`` above its limit, expected in ``[0, pi / N]``."""
        return self.alpha_n - OVERLAP_ALPHA


def _rotate(x: Tuple[int, int]) -> Tuple[int, int]:
    return int(x[0]) + int(x[1]), int(x[0]) - int(x[1])


def step_kernel(n: int, x: Tuple[int, int]) -> float:
    """Return ``q_n(x) = P(S_n = x)`` for the walk started at the origin, without any window restriction.

    Args:
        n: Time, ``n >= 0``.
        x: Lattice site.

    Returns:
        Transition probability, exactly ``0.0`` off the parity lattice and outside the ℓ¹ ball of radius ``n``.

    Raises:
        DomainException: If ``n`` is negative.

    """
    if n <= master_config.exact_return_mass_limit:
        return float(step_kernel_exact(n, x))
    a, b = _rotate(x)
    if (n + a) % 2 != 0 or max(abs(a), abs(b)) > n:
        return 0.0
    return float(binom.pmf((n + a) // 2, n, 0.5) * binom.pmf((n + b) // 2, n, 0.5))


def step_kernel_exact(n: int, x: Tuple[int, int]) -> Fraction:
    """Rational value of :func:`step_kernel`."""
    if n < 0:
        raise DomainException(f"Kernel time must be non-negative, got {n}")
    a, b = _rotate(x)
    if (n + a) % 2 != 0 or max(abs(a), abs(b)) > n:
        return Fraction(0)
    return Fraction(math.comb(n, (n + a) // 2) * math.comb(n, (n + b) // 2), 4 ** n)


def kernel_slice(n: int, half_width: int) -> np.ndarray:
    """Return ``q_n`` on the rotated square of the given half-width (same parity as ``n``).

    Entries outside the light cone are zero, so ``half_width`` may exceed ``n``.
    """
    marginal = kernel_marginal(n, half_width)
    return np.outer(marginal, marginal)


def kernel_marginal(n: int, half_width: int) -> np.ndarray:
    """Law of one rotated coordinate of ``S_n`` on the offsets ``-h, -h + 2, ..., h``, so that ``q_n = outer(p, p)``."""
    if (half_width - n) % 2 != 0:
        raise DomainException(f"Slice half-width {half_width} must have the parity of the time {n}")
    offsets = np.arange(-half_width, half_width + 1, 2)
    marginal = binom.pmf((n + offsets) // 2, n, 0.5)
    marginal[np.abs(offsets) > n] = 0.0
    return marginal


def iter_kernel_slices(n_max: int) -> Iterator[Tuple[int, np.ndarray]]:
    """Evolve ``q_n`` on its full light cone by repeated convolution with the one-step kernel.

    Only the current slice is kept in memory.

    Yields:
        Pairs ``(n, q_n)`` for ``n = 0 .. n_max``, the slice of time ``n`` has half-width ``n``.

    """
    current = np.ones((1, 1))
    yield 0, current
    for n in range(1, n_max + 1):
        current = step_forward(current)
        yield n, current


def local_clt_kernel(n: int, x: Tuple[int, int]) -> float:
    """Local central limit approximation ``2 / (pi n) * exp(-|x|² / n)`` of ``q_n(x)`` on the parity lattice."""
    if n <= 0:
        raise DomainException(f"The local limit kernel needs a positive time, got {n}")
    a, _ = _rotate(x)
    if (n + a) % 2 != 0:
        return 0.0
    return 2.0 / (math.pi * n) * math.exp(-(x[0] ** 2 + x[1] ** 2) / n)


def local_clt_slice(n: int, half_width: int) -> np.ndarray:
    """Local limit approximation of :func:`kernel_slice`, supported on the same squares."""
    x1, x2 = slice_sites(half_width)
    values = 2.0 / (math.pi * n) * np.exp(-(x1.astype(float) ** 2 + x2.astype(float) ** 2) / n)
    return values


def local_clt_gap(n: int, radius: int) -> float:
    """Largest absolute difference between exact and local limit kernels at time ``n`` on ``|x|_1 <= radius``."""
    half_width = radius - ((radius - n) % 2)
    if half_width < 0:
        return 0.0
    return float(np.max(np.abs(kernel_slice(n, half_width) - local_clt_slice(n, half_width))))


@lru_cache(maxsize=4)
def _central_binomial_masses(n_max: int) -> np.ndarray:
    exact_limit = min(n_max, master_config.exact_return_mass_limit)
    masses = np.empty(n_max + 1)
    masses[: exact_limit + 1] = [float(Fraction(math.comb(2 * n, n), 4 ** n)) for n in range(exact_limit + 1)]
    if n_max > exact_limit:
        n = np.arange(exact_limit + 1, n_max + 1)
        masses[exact_limit + 1 :] = masses[exact_limit] * np.cumprod((2 * n - 1) / (2 * n))
    masses.setflags(write=False)
    return masses


def return_masses(n_max: int) -> np.ndarray:
    """Return ``u(0), u(1), ..., u(n_max)`` with ``u(0) = 1``.

    Values up to :data:`~polymer_lab.master_config.exact_return_mass_limit` are correctly rounded from exact rationals,
    later ones continue the central binomial product ``c_n = c_{n-1} (2n - 1) / (2n)`` in floating point.
    """
    if n_max < 0:
        raise DomainException(f"Horizon must be non-negative, got {n_max}")
    return _central_binomial_masses(_cache_size(n_max))[: n_max + 1] ** 2


def _cache_size(n_max: int) -> int:
    # round up to a power of two so that growing horizons reuse one cached table
    return max(1024, 1 << (n_max - 1).bit_length()) if n_max > 0 else 1024


def return_mass(n: int) -> float:
    """Return ``u(n) = P(S_2n = 0)``.

    Raises:
        DomainException: If ``n < 1``, overlap sums start at ``n = 1``.

    """
    if n < 1:
        raise DomainException(f"Return masses are defined for n >= 1, got {n}")
    return float(return_masses(n)[n])


def return_mass_exact(n: int) -> Fraction:
    """Rational return mass ``(C(2n, n) / 4 ** n) ** 2``."""
    if n < 1:
        raise DomainException(f"Return masses are defined for n >= 1, got {n}")
    return Fraction(math.comb(2 * n, n), 4 ** n) ** 2


def overlap_sums(n_max: int) -> np.ndarray:
    """Return ``R_0 = 0, R_1, ..., R_{n_max}``."""
    return np.concatenate(([0.0], np.cumsum(return_masses(n_max)[1:])))


def overlap_sum(n: int) -> OverlapSum:
    """Return ``R_N = sum_{m=1..N} u(m)`` and ``alpha_N = pi R_N - log N``.

    Raises:
        DomainException: If ``n < 1``.

    """
    if n < 1:
        raise DomainException(f"Overlap sums are defined for N >= 1, got {n}")
    r_n = float(overlap_sums(n)[n])
    return OverlapSum(r_n, math.pi * r_n - math.log(n))


def overlap_sum_exact(n: int) -> Fraction:
    """Rational value of ``R_N``."""
    return sum((return_mass_exact(m) for m in range(1, n + 1)), Fraction(0))


def convolved_return_masses(n_max: int) -> np.ndarray:
    """Return masses ``u(1..n_max)`` computed as ``sum_x q_n(x)²`` from convolved slices (the validation oracle)."""
    return np.array([np.square(current).sum() for n, current in iter_kernel_slices(n_max) if n > 0])


def validate_return_masses(n_max: int, tolerance: float = master_config.kernel_validation_tolerance) -> float:
    """Compare closed-form return masses with the convolution oracle up to ``n_max``.

    Returns:
        Largest relative deviation.

    Raises:
        ConsistencyException: If the deviation exceeds ``tolerance``.

    """
    closed = return_masses(n_max)[1:]
    convolved = convolved_return_masses(n_max)
    deviation = float(np.max(np.abs(convolved - closed) / closed)) if n_max > 0 else 0.0
    if deviation > tolerance:
        raise ConsistencyException(
            f"Closed-form return masses deviate from convolution by {deviation:.3e} (tolerance {tolerance:.1e})"
        )
    logger.debug(f"Validated return masses up to n={n_max}, max relative deviation {deviation:.3e}")
    return deviation


@dataclass(frozen=True)
class KernelTable:
    """Return masses, overlap sums and windowed kernel slices up to a horizon.

    ``u[n]`` and ``r[n]`` are indexed by time (index 0 holds ``u(0) = 1`` and ``R_0 = 0``). ``windowed_q`` maps each
    requested time to its slice cropped to ``|x|_1 <= window_radius``.
    """

    n_max: int
    u: np.ndarray
    r: np.ndarray
    window_radius: int = 0
    mode: KernelMode = KernelMode.exact
    windowed_q: Dict[int, np.ndarray] = field(default_factory=dict)

    def return_mass(self, n: int) -> float:
        """Stored ``u(n)``, see :func:`return_mass`."""
        if not 1 <= n <= self.n_max:
            raise DomainException(f"Return mass u({n}) is outside the table range 1..{self.n_max}")
        return float(self.u[n])

    def overlap_sum(self, n: int) -> OverlapSum:
        """Stored ``R_n``, see :func:`overlap_sum`."""
        if not 1 <= n <= self.n_max:
            raise DomainException(f"Overlap sum R_{n} is outside the table range 1..{self.n_max}")
        return OverlapSum(float(self.r[n]), math.pi * float(self.r[n]) - math.log(n))

    def step_kernel(self, n: int, x: Tuple[int, int]) -> float:
        """Look up ``q_n(x)`` in the persisted window.

        Raises:
            WindowExceededException: If time ``n`` was not persisted or ``x`` lies outside the window.

        """
        a, b = _rotate(x)
        if (n + a) % 2 != 0 or max(abs(a), abs(b)) > n:
            return 0.0
        if n not in self.windowed_q or max(abs(a), abs(b)) > self.window_radius:
            raise WindowExceededException(
                f"q_{n}{tuple(x)} is outside the persisted window (radius {self.window_radius}, "
                f"times {sorted(self.windowed_q)}), rebuild the table with a larger window"
            )
        values = self.windowed_q[n]
        half_width = values.shape[0] - 1
        return float(values[(a + half_width) // 2, (b + half_width) // 2])

    def to_frame(self) -> pd.DataFrame:
        """Export ``(n, u_n, R_n)`` for ``n = 1 .. n_max``."""
        n = np.arange(1, self.n_max + 1)
        return pd.DataFrame({"n": n, "u_n": self.u[1:], "R_n": self.r[1:]})

    @staticmethod
    def from_frame(df: pd.DataFrame) -> "KernelTable":
        """Rebuild a table without windowed slices from :meth:`to_frame` output."""
        n_max = int(df["n"].iloc[-1])
        if list(df["n"]) != list(range(1, n_max + 1)):
            raise DomainException("Kernel table rows must list n = 1 .. n_max without gaps")
        u = np.concatenate(([1.0], df["u_n"].to_numpy(dtype=float)))
        r = np.concatenate(([0.0], df["R_n"].to_numpy(dtype=float)))
        return KernelTable(n_max, u, r)


def build_kernel_table(
    n_max: int,
    window_radius: int = 0,
    window_times: Sequence[int] = (),
    mode: KernelMode = KernelMode.exact,
    convolution_limit: int = master_config.kernel_convolution_limit,
) -> KernelTable:
    """Build a :class:`KernelTable` and validate its closed-form return masses against convolution.

    Slices are evolved with two rolling time layers; only the crops of the requested times are persisted.

    Args:
        n_max: Time horizon, at least 1.
        window_radius: ℓ¹ radius of the persisted kernel window.
        window_times: Times whose windowed slices are persisted.
        mode: Exact kernels or their local limit approximation for the windowed slices.
        convolution_limit: Validate ``u(n)`` by convolution up to this time.

    Returns:
        Immutable kernel table.

    Raises:
        DomainException: If the horizon or a window time is out of range.
        ConsistencyException: If closed form and convolution disagree.

    """
    if n_max < 1:
        raise DomainException(f"Kernel tables need a horizon of at least 1, got {n_max}")
    if any(not 0 <= t for t in window_times):
        raise DomainException(f"Window times must be non-negative, got {list(window_times)}")

    validate_return_masses(min(n_max, convolution_limit))

    requested = sorted(set(int(t) for t in window_times))
    windowed: Dict[int, np.ndarray] = {}
    if requested:
        for n, current in iter_kernel_slices(requested[-1]):
            if n in requested:
                half_width = min(n, window_radius - ((window_radius - n) % 2))
                if half_width < 0:
                    windowed[n] = np.zeros((0, 0))
                elif mode is KernelMode.local_clt and n > 0:
                    windowed[n] = local_clt_slice(n, half_width)
                else:
                    windowed[n] = crop(current, n, half_width).copy()

    table = KernelTable(n_max, return_masses(n_max).copy(), overlap_sums(n_max), window_radius, mode, windowed)
    logger.info(f"Built kernel table up to n={n_max} (R_n={table.r[n_max]:.12g}, {len(windowed)} windowed slices)")
    return table
