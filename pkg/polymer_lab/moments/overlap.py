"""Weighted collision kernels ``q_2i(f, g) = sum_{x, y} f(x) g(y) q_2i(y - x)`` and weighted Green functions."""
import logging
from typing import Optional

import numpy as np
from polymer_lab.lattice import (
    KernelTable,
    kernel_marginal,
    resize,
)
from polymer_lab.static import (
    DomainException,
    ParityException,
    WindowExceededException,
)
from scipy.signal import fftconvolve

from .mass import MassFunction

logger = logging.getLogger("moments")

_MARGINAL_CHUNK = 1024


def difference_mass(f: MassFunction, g: MassFunction) -> np.ndarray:
    """Return the law of ``y - x`` weighted by ``f(x) g(y)`` on a rotated slice of even half-width.

    Raises:
        ParityException: If ``f`` and ``g`` live on different parity classes.

    """
    if f.parity != g.parity:
        raise ParityException("Weighted collision kernels need both mass functions on the same parity class")
    radius = max(f.radius, g.radius)
    half_width = radius + ((radius - f.parity) % 2)
    f_values = f.to_slice(half_width)
    g_values = g.to_slice(half_width)
    return np.clip(fftconvolve(g_values, f_values[::-1, ::-1], mode="full"), 0.0, None)


def collision_kernel(
    f: MassFunction, g: MassFunction, n_max: int, table: Optional[KernelTable] = None
) -> np.ndarray:
    """Return ``q_2i(f, g)`` for ``i = 0 .. n_max``.

    Without a table the kernels are evaluated on the full light cone; with a :class:`~polymer_lab.lattice.KernelTable`
    its persisted windows are used and every time ``2i`` must be persisted on a window covering the differences of
    both supports.

    Raises:
        WindowExceededException: If the table window is too small for the supports.

    """
    if n_max < 0:
        raise DomainException(f"Horizon must be non-negative, got {n_max}")
    differences = difference_mass(f, g)
    half_width = differences.shape[0] - 1
    values = np.empty(n_max + 1)
    values[0] = float(differences[half_width // 2, half_width // 2])

    if table is not None:
        for i in range(1, n_max + 1):
            values[i] = float(np.sum(differences * _windowed_kernel(table, 2 * i, half_width)))
        return values

    for start in range(1, n_max + 1, _MARGINAL_CHUNK):
        times = range(start, min(start + _MARGINAL_CHUNK, n_max + 1))
        marginals = np.stack([kernel_marginal(2 * i, half_width) for i in times])
        values[start : start + len(times)] = np.sum((marginals @ differences) * marginals, axis=1)
    return values


def _windowed_kernel(table: KernelTable, time: int, half_width: int) -> np.ndarray:
    if time not in table.windowed_q:
        raise WindowExceededException(
            f"q_{time} is not persisted in the kernel table, rebuild it with window time {time}"
        )
    kernel = table.windowed_q[time]
    width = kernel.shape[0] - 1
    if width < half_width and width < time:
        raise WindowExceededException(
            f"Kernel window of radius {table.window_radius} does not cover differences up to ℓ¹ radius "
            f"{half_width}, rebuild the table with a larger window"
        )
    return resize(kernel, width, half_width)


def green_weighted(n: int, f: MassFunction, g: MassFunction, table: Optional[KernelTable] = None) -> float:
    """Return ``G_n(f, g) = sum_{i=1..n} q_2i(f, g)``."""
    return float(np.sum(collision_kernel(f, g, n, table)[1:]))
