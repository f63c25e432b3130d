"""Partition functions of several starting laws on the same replicas.

One backward pass yields ``Z_N(x)`` for every starting site of the window, and ``Z_N(f) = sum_x f(x) Z_N(x)`` for
each law follows by a dot product. Suprema over initial conditions are evaluated over Dirac masses on a disc grid
plus the uniform law of the disc, which gives a lower bound of the supremum over all laws of the disc.
"""
import math
from functools import partial
from typing import (
    List,
    NamedTuple,
    Optional,
    Sequence,
)

import numpy as np
from polymer_lab import master_config
from polymer_lab.disorder import DisorderModel
from polymer_lab.engine import (
    default_cone_truncation,
    partition_all_starts,
    sample_field,
)
from polymer_lab.moments.mass import (
    MassFunction,
    dirac,
    disc_grid,
    uniform_ball,
)
from polymer_lab.services import (
    ParallelContext,
    ReplicaBlock,
)
from polymer_lab.static import (
    DomainException,
    McSummary,
)

from .replicas import (
    run_replicas,
    summarize,
)


class StartLaw(NamedTuple):
    label: str
    law: MassFunction


class GridSupremum(NamedTuple):
    """Per-law estimates and the law realizing the largest one."""

    laws: List[StartLaw]
    estimates: List[McSummary]

    @property
    def index(self) -> int:
        return int(np.argmax([summary.estimate for summary in self.estimates]))

    @property
    def sup(self) -> McSummary:
        return self.estimates[self.index]

    @property
    def argmax(self) -> StartLaw:
        return self.laws[self.index]


def start_grid(radius: float, max_sites: Optional[int] = None) -> List[StartLaw]:
    """Dirac masses on the even sites of the disc of radius ``radius`` followed by its uniform law."""
    sites = disc_grid(radius, max_sites or master_config.dirac_grid_max_sites)
    laws = [StartLaw(f"dirac({x1},{x2})", dirac((int(x1), int(x2)))) for x1, x2 in sites]
    laws.append(StartLaw(f"uniform({radius:.6g})", uniform_ball(radius)))
    return laws


def _starts_block(
    block: ReplicaBlock,
    model: DisorderModel,
    horizon: int,
    beta: float,
    laws: Sequence[MassFunction],
    seed: int,
    truncation: Optional[int],
) -> np.ndarray:
    if beta == 0:
        return np.tile([law.total for law in laws], (block.size, 1))
    radius = max(law.radius for law in laws)
    values = np.empty((block.size, len(laws)))
    for i, replica in enumerate(range(block.start, block.stop)):
        field = sample_field(model, horizon, seed, replica, radius=radius, truncation=truncation)
        table = partition_all_starts(field, beta, window_radius=radius)
        width = np.shape(table.value)[0] - 1
        scale = math.exp(table.log_norm)
        values[i] = [float(np.sum(law.to_slice(width) * table.value)) * scale for law in laws]
    return values


def start_samples(
    model: DisorderModel,
    horizon: int,
    beta: float,
    laws: Sequence[MassFunction],
    reps: int,
    seed: int,
    parallel: Optional[ParallelContext] = None,
) -> List[np.ndarray]:
    """Draw ``Z_N(f)`` for every law ``f`` on the same replicas.

    Returns:
        Per-block arrays with one column per law.

    Raises:
        DomainException: If a law lives on the odd sublattice.

    """
    if any(law.parity != 0 for law in laws):
        raise DomainException("Starting laws must live on the even sublattice")
    radius = max(law.radius for law in laws)
    task = partial(
        _starts_block,
        model=model,
        horizon=horizon,
        beta=beta,
        laws=list(laws),
        seed=seed,
        truncation=default_cone_truncation(horizon, radius),
    )
    return run_replicas(task, reps, parallel)


def half_moment_supremum(
    model: DisorderModel,
    horizon: int,
    beta: float,
    laws: Sequence[StartLaw],
    reps: int,
    seed: int,
    parallel: Optional[ParallelContext] = None,
) -> GridSupremum:
    """Estimate ``E[Z_N(f)^(1/2)]`` for every starting law."""
    blocks = start_samples(model, horizon, beta, [start.law for start in laws], reps, seed, parallel)
    estimates = [summarize([np.sqrt(block[:, j]) for block in blocks], seed) for j in range(len(laws))]
    return GridSupremum(list(laws), estimates)
