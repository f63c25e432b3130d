"""Monte Carlo shadow of the third-moment diagram sums: alternating stretches of two independent renewals.

Both renewals start uniformly in ``1..N~`` and jump with law ``K(m) = u(m) / R_N~`` on ``1..N~``; only points inside
``1..N~`` are kept. Merging the two point sets, a stretch is a maximal run of consecutive points of the same renewal.
``J_l`` is the probability that the renewals do not meet and show at least ``l`` stretches.
"""
import logging
from functools import partial
from typing import (
    NamedTuple,
    Optional,
)

import numpy as np
import pandas as pd
from polymer_lab.lattice import renewal_law
from polymer_lab.services import (
    ParallelContext,
    ReplicaBlock,
    execute_blocks,
    replica_blocks,
    stream,
)
from polymer_lab.static import (
    RENEWAL_STREAM_TAG,
    DomainException,
)
from scipy.stats import linregress

logger = logging.getLogger("moments")

_MIN_REPS = 1000


class StretchProbabilities(NamedTuple):
    """Estimates of ``J_l`` for ``l = 2..ell_max`` with binomial standard errors."""

    ell: np.ndarray
    j: np.ndarray
    stderr: np.ndarray
    reps: int
    seed: int

    def to_frame(self) -> pd.DataFrame:
        """Export ``(ell, J, stderr)`` rows."""
        return pd.DataFrame({"ell": self.ell, "J": self.j, "stderr": self.stderr})


def _renewal_points(rng: np.random.Generator, cumulative: np.ndarray, n_tilde: int) -> np.ndarray:
    points = [int(rng.integers(1, n_tilde + 1))]
    while True:
        step = 1 + int(np.searchsorted(cumulative, rng.random(), side="right"))
        if points[-1] + step > n_tilde:
            return np.array(points)
        points.append(points[-1] + step)


def count_stretches(first: np.ndarray, second: np.ndarray) -> Optional[int]:
    """Return the number of alternating stretches of two point sets, ``None`` if they intersect."""
    if np.intersect1d(first, second).size:
        return None
    labels = np.concatenate([np.zeros(first.size, dtype=np.int8), np.ones(second.size, dtype=np.int8)])
    ordered = labels[np.argsort(np.concatenate([first, second]), kind="stable")]
    return 1 + int(np.count_nonzero(np.diff(ordered)))


def _stretch_block(block: ReplicaBlock, n_tilde: int, ell_max: int, seed: int) -> np.ndarray:
    mass = renewal_law(n_tilde).mass
    # cumulative[m - 1] = P(step <= m)
    cumulative = np.cumsum(mass[1:])
    cumulative[-1] = 1.0
    counts = np.zeros(ell_max + 1, dtype=np.int64)
    for replica in range(block.start, block.stop):
        rng = stream(seed, RENEWAL_STREAM_TAG, replica)
        stretches = count_stretches(
            _renewal_points(rng, cumulative, n_tilde), _renewal_points(rng, cumulative, n_tilde)
        )
        if stretches is not None:
            counts[min(stretches, ell_max)] += 1
    return counts


def stretch_prob_mc(
    n_tilde: int, ell_max: int, reps: int, seed: int, parallel: Optional[ParallelContext] = None
) -> StretchProbabilities:
    """Estimate ``J_l = P(no meeting, at least l stretches)`` for ``l = 2..ell_max``.

    Args:
        n_tilde: Strip length ``N~ >= 1``.
        ell_max: Largest stretch count, at least 2.
        reps: Number of renewal pairs, at least 1000.
        seed: Master seed.
        parallel: Worker pool for replica blocks.

    Raises:
        DomainException: If an argument is out of range.

    """
    if reps < _MIN_REPS:
        raise DomainException(f"Stretch probabilities need at least {_MIN_REPS} replicas, got {reps}")
    if ell_max < 2 or n_tilde < 1:
        raise DomainException(f"Need ell_max >= 2 and N~ >= 1, got ell_max={ell_max}, N~={n_tilde}")

    task = partial(_stretch_block, n_tilde=n_tilde, ell_max=ell_max, seed=seed)
    counts = np.sum(execute_blocks(task, replica_blocks(reps), parallel), axis=0)
    # counts[l] holds the pairs with exactly l stretches (l = ell_max: at least), J_l is the tail sum
    tail = np.cumsum(counts[::-1])[::-1]
    ell = np.arange(2, ell_max + 1)
    j = tail[2:] / reps
    stderr = np.sqrt(j * (1 - j) / reps)
    logger.info(f"Estimated J_2..J_{ell_max} at N~={n_tilde} from {reps} renewal pairs: J_2={j[0]:.4f}")
    return StretchProbabilities(ell, j, stderr, reps, seed)


def stretch_decay_slope(estimates: StretchProbabilities, ell_min: int = 2, ell_max: int = 6) -> float:
    """Slope of ``log J_l`` against ``l`` over ``ell_min..ell_max``, ignoring vanishing estimates."""
    selected = (estimates.ell >= ell_min) & (estimates.ell <= ell_max) & (estimates.j > 0)
    if np.count_nonzero(selected) < 2:
        raise DomainException("Decay slope needs at least two positive stretch probabilities")
    return float(linregress(estimates.ell[selected], np.log(estimates.j[selected])).slope)
