"""Counter-based random streams.

Every random quantity of a run is a pure function of the master seed and a spawn key ``(tag, replica, ...)``. Streams
are ``Philox`` bit generators seeded through :class:`numpy.random.SeedSequence`, so the value drawn for a replica does
not depend on which worker evaluates it or in which order replicas are processed.
"""
from typing import Tuple

import numpy as np

_OPEN_UNIFORM_BITS = 52


def stream(seed: int, tag: int, replica: int, *words: int) -> np.random.Generator:
    """Return the generator keyed by ``(seed, tag, replica, *words)``.

    Args:
        seed: Master seed of the run.
        tag: Stream family, one of the ``*_STREAM_TAG`` constants.
        replica: Replica index.
        words: Further non-negative key words (e.g. the time index of a field slice).

    Returns:
        Fresh generator positioned at the start of the stream.

    """
    spawn_key: Tuple[int, ...] = (tag, replica, *words)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=spawn_key)))


def open_uniforms(rng: np.random.Generator, size: int) -> np.ndarray:
    """Draw uniforms on the open interval ``(0, 1)``, safe to feed into inverse distribution functions."""
    bits = rng.integers(0, 2 ** _OPEN_UNIFORM_BITS, size=size, dtype=np.int64)
    return (bits + 0.5) * 2.0 ** -_OPEN_UNIFORM_BITS
