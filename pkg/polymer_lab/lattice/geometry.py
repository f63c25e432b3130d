"""Rotated-coordinate slices of the square lattice.

A step of the simple random walk changes both rotated coordinates ``a = x1 + x2`` and ``b = x1 - x2`` by an
independent ``+-1``. Sites reachable at time ``n`` satisfy ``a = b = n (mod 2)``, so a square of half-width ``h``
(``h = n (mod 2)``) in rotated coordinates is stored as an ``(h + 1) x (h + 1)`` array whose entry ``[i, j]`` is the
site ``a = 2i - h``, ``b = 2j - h``. The square of half-width ``h`` is exactly the ℓ¹ ball ``|x1| + |x2| <= h``.
"""
from functools import lru_cache
from typing import Tuple

import numpy as np


def rotated_offsets(half_width: int) -> np.ndarray:
    """Rotated coordinates ``-h, -h + 2, ..., h`` along one axis of a slice."""
    return np.arange(-half_width, half_width + 1, 2)


def slice_sites(half_width: int) -> Tuple[np.ndarray, np.ndarray]:
    """Return the lattice coordinates ``(x1, x2)`` of every entry of a slice.

    Args:
        half_width: Half-width ``h`` of the slice in rotated coordinates.

    Returns:
        Two integer arrays of shape ``(h + 1, h + 1)``.

    """
    offsets = rotated_offsets(half_width)
    a, b = np.meshgrid(offsets, offsets, indexing="ij")
    return (a + b) // 2, (a - b) // 2


def site_index(half_width: int, x: Tuple[int, int]) -> Tuple[int, int]:
    """Array index of lattice site ``x`` in a slice of the given half-width.

    Raises:
        ValueError: If ``x`` has the wrong parity or lies outside the slice.

    """
    a, b = x[0] + x[1], x[0] - x[1]
    if (a + half_width) % 2 != 0:
        raise ValueError(f"Site {x} has no entry in a slice of half-width {half_width} (parity)")
    if max(abs(a), abs(b)) > half_width:
        raise ValueError(f"Site {x} lies outside the slice of half-width {half_width}")
    return (a + half_width) // 2, (b + half_width) // 2


def step_forward(previous: np.ndarray) -> np.ndarray:
    """Push a slice one time step forward under the walk kernel (half-width grows by one)."""
    padded = np.pad(previous, 1)
    return 0.25 * (padded[:-1, :-1] + padded[:-1, 1:] + padded[1:, :-1] + padded[1:, 1:])


def step_backward(current: np.ndarray) -> np.ndarray:
    """Average a slice over the four successors of every site (half-width shrinks by one)."""
    return 0.25 * (current[:-1, :-1] + current[:-1, 1:] + current[1:, :-1] + current[1:, 1:])


def crop(values: np.ndarray, half_width: int, new_half_width: int) -> np.ndarray:
    """Restrict a slice to a smaller centred square of the same parity."""
    if new_half_width > half_width or (half_width - new_half_width) % 2 != 0:
        raise ValueError(f"Cannot crop half-width {half_width} to {new_half_width}")
    offset = (half_width - new_half_width) // 2
    if offset == 0:
        return values
    return values[offset:-offset, offset:-offset]


def embed(values: np.ndarray, half_width: int, new_half_width: int) -> np.ndarray:
    """Zero-pad a slice to a larger centred square of the same parity."""
    if new_half_width < half_width or (new_half_width - half_width) % 2 != 0:
        raise ValueError(f"Cannot embed half-width {half_width} into {new_half_width}")
    return np.pad(values, (new_half_width - half_width) // 2)


def resize(values: np.ndarray, half_width: int, new_half_width: int) -> np.ndarray:
    """Crop or zero-pad a slice to ``new_half_width``."""
    if new_half_width <= half_width:
        return crop(values, half_width, new_half_width)
    return embed(values, half_width, new_half_width)


@lru_cache(maxsize=16)
def shell_positions(half_width: int) -> np.ndarray:
    """Canonical position of every slice entry in an enumeration by growing ℓ∞ shells.

    Cells of the rotated square of half-width ``d`` come before all cells of ring ``d + 2``; inside a ring the order is
    top edge, bottom edge, left edge, right edge. The cells of any centred square of half-width ``h`` are therefore the
    first ``(h + 1) ** 2`` positions, independently of the size of the surrounding slice.

    Args:
        half_width: Half-width ``h`` of the slice.

    Returns:
        Integer array of shape ``(h + 1, h + 1)`` holding a permutation of ``0 .. (h + 1) ** 2 - 1``.

    """
    offsets = rotated_offsets(half_width)
    a, b = np.meshgrid(offsets, offsets, indexing="ij")
    ring = np.maximum(np.abs(a), np.abs(b))
    inner = np.where(ring == 0, 0, (ring - 1) ** 2)

    top = (a + ring) // 2
    bottom = ring + 1 + (a + ring) // 2
    left = 2 * (ring + 1) + (b + ring - 2) // 2
    right = 3 * ring + 1 + (b + ring - 2) // 2

    offset = np.where(b == ring, top, np.where(b == -ring, bottom, np.where(a == -ring, left, right)))
    offset = np.where(ring == 0, 0, offset)
    return (inner + offset).astype(np.int64)
