"""Environments drawn from the size-biased law ``Z_N(f) dP``.

Under the size-biased law a walk ``S`` is drawn from ``P_f`` and the environment is tilted along it: cells on the
trajectory follow ``exp(beta omega - lambda(beta)) dP``, all other cells keep their law.
"""
from typing import (
    NamedTuple,
    Optional,
)

import numpy as np
from polymer_lab.disorder import DisorderModel
from polymer_lab.moments.mass import MassFunction
from polymer_lab.services import (
    open_uniforms,
    stream,
)
from polymer_lab.static import (
    PATH_STREAM_TAG,
    TILT_STREAM_TAG,
    DomainException,
)

from .field import (
    DiamondField,
    sample_field,
)


class SizeBiasedSample(NamedTuple):
    """Walk ``S_0..S_N`` (array of shape ``(N + 1, 2)``) and the environment tilted along it."""

    path: np.ndarray
    field: DiamondField


def sample_path(f: MassFunction, horizon: int, seed: int, replica: int) -> np.ndarray:
    """Draw ``S_0 ~ f`` and ``N`` steps of the simple random walk from the path stream of the replica."""
    rng = stream(seed, PATH_STREAM_TAG, replica)
    start = f.sites[rng.choice(f.sites.shape[0], p=f.weights / f.weights.sum())]
    # independent +-1 steps of both rotated coordinates
    rotated = 2 * rng.integers(0, 2, size=(horizon, 2)) - 1
    steps = np.stack([(rotated[:, 0] + rotated[:, 1]) // 2, (rotated[:, 0] - rotated[:, 1]) // 2], axis=1)
    return np.vstack([start, start + np.cumsum(steps, axis=0)]).astype(np.int64)


def sizebias_sample(
    model: DisorderModel,
    beta: float,
    horizon: int,
    f: MassFunction,
    seed: int,
    replica: int = 0,
    truncation: Optional[int] = None,
) -> SizeBiasedSample:
    """Draw one pair ``(S, omega)`` from the size-biased law.

    The untilted cells coincide with :func:`~polymer_lab.engine.field.sample_field` of the same seed and replica, the
    tilted values come from their own stream.

    Args:
        model: Environment law.
        beta: Disorder strength.
        horizon: Horizon ``N``.
        f: Probability mass function of the starting point.
        seed: Master seed.
        replica: Replica index.
        truncation: Optional half-width cap of the field, path cells outside the cap are never read and not stored.

    Raises:
        DomainException: If ``f`` is not normalized.

    """
    if not f.is_probability():
        raise DomainException(f"Size-biasing needs a probability mass function, total mass is {f.total!r}")
    path = sample_path(f, horizon, seed, replica)
    tilted = model.tilted_quantile(open_uniforms(stream(seed, TILT_STREAM_TAG, replica), horizon), beta)
    field = sample_field(model, horizon, seed, replica, radius=f.radius, parity=f.parity, truncation=truncation)
    widths = field.half_widths()
    cells = {
        (n, int(path[n, 0]), int(path[n, 1])): float(tilted[n - 1])
        for n in range(1, horizon + 1)
        if max(abs(path[n, 0] + path[n, 1]), abs(path[n, 0] - path[n, 1])) <= widths[n]
    }
    return SizeBiasedSample(path, field.with_cells(cells))
