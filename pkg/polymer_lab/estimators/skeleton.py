"""Coarse-grained skeleton weights.

At scale ``N0``, ``Q(y)`` is the largest half moment of the partition function that starts in the disc
``B(0, sqrt(N0) / 2)`` and ends in the disc ``B(y sqrt(N0), sqrt(N0) / 2)``:

    Q(y) = sup_mu E[Z_{0,N0}(mu; B(y sqrt(N0), sqrt(N0) / 2))^(1/2)],

with ``y`` on the integer lattice. The walk leaves the disc around ``y`` with Gaussian probability, hence the tail
``Q(y) <= exp(-(|y|_1 - 2)² / 4)``. Summing the certified bound ``1/300`` over ``|y|_1 <= K`` and the tail beyond
gives the bookkeeping sum compared with ``exp(-1)``.
"""
import logging
import math
from functools import partial
from typing import (
    Any,
    Dict,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np
import pandas as pd
from polymer_lab import master_config
from polymer_lab.disorder import DisorderModel
from polymer_lab.engine import (
    default_cone_truncation,
    forward_pass,
    sample_field,
)
from polymer_lab.lattice import slice_sites
from polymer_lab.moments.mass import MassFunction
from polymer_lab.services import (
    ParallelContext,
    ReplicaBlock,
)
from polymer_lab.static import (
    FINITE_VOLUME_THRESHOLD,
    Check,
    DomainException,
    McSummary,
)

from .replicas import (
    bound_check,
    check_fields,
    run_replicas,
    summarize,
)
from .starts import (
    StartLaw,
    start_grid,
)

logger = logging.getLogger("estimators")

MIN_SKELETON_SCALE = 16

#: ``|y|_1`` values at which the Gaussian tail of ``Q`` is audited.
TAIL_RADII = (4, 6, 8)

Displacement = Tuple[int, int]


class SkeletonEstimate(NamedTuple):
    """``Q(y)`` on a set of displacements, each the largest estimate over the starting laws."""

    scale: int
    beta: float
    displacements: List[Displacement]
    estimates: List[McSummary]
    starts: List[str]
    truncation_order: int
    checks: List[Check]

    def q(self, y: Displacement) -> McSummary:
        return self.estimates[self.displacements.index(tuple(y))]

    @property
    def total(self) -> float:
        """Sum of the estimates over ``|y|_1 <= K``."""
        return math.fsum(
            summary.estimate
            for y, summary in zip(self.displacements, self.estimates)
            if abs(y[0]) + abs(y[1]) <= self.truncation_order
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "y1": [y[0] for y in self.displacements],
                "y2": [y[1] for y in self.displacements],
                "l1": [abs(y[0]) + abs(y[1]) for y in self.displacements],
                "q": [summary.estimate for summary in self.estimates],
                "stderr": [summary.stderr for summary in self.estimates],
                "tail_bound": [gaussian_tail(y) for y in self.displacements],
                "start": self.starts,
            }
        )

    def to_summary(self) -> Dict[str, Any]:
        return {
            "N0": self.scale,
            "beta": self.beta,
            "K": self.truncation_order,
            "sum_q": self.total,
            "bookkeeping_sum": bookkeeping_sum(self.truncation_order),
            "target": math.exp(-1),
            "checks": check_fields(self.checks),
        }


def gaussian_tail(y: Displacement) -> float:
    """Return ``exp(-(|y|_1 - 2)² / 4)``, trivial (``1``) for ``|y|_1 <= 2``."""
    l1 = abs(y[0]) + abs(y[1])
    return 1.0 if l1 <= 2 else math.exp(-((l1 - 2) ** 2) / 4)


def bookkeeping_sum(k: int, tail_terms: int = 200) -> float:
    """Return ``(2K² + 2K + 1) / 300 + sum_{r > K} 4 r exp(-(r - 2)² / 4)``.

    ``2K² + 2K + 1`` counts the displacements with ``|y|_1 <= K`` and ``4r`` those with ``|y|_1 = r``.
    """
    head = (2 * k * k + 2 * k + 1) * FINITE_VOLUME_THRESHOLD
    tail = math.fsum(4 * r * math.exp(-((r - 2) ** 2) / 4) for r in range(k + 1, k + 1 + tail_terms))
    return head + tail


def displacements(k: int) -> List[Displacement]:
    """Lattice vectors with ``|y|_1 <= K`` by increasing ``|y|_1``."""
    points = [(y1, y2) for y1 in range(-k, k + 1) for y2 in range(-k, k + 1) if abs(y1) + abs(y2) <= k]
    return sorted(points, key=lambda y: (abs(y[0]) + abs(y[1]), y))


def _target_masks(scale: int, half_width: int, targets: Sequence[Displacement]) -> np.ndarray:
    x1, x2 = slice_sites(half_width)
    root = math.sqrt(scale)
    masks = [(x1 - y1 * root) ** 2 + (x2 - y2 * root) ** 2 <= scale / 4 for y1, y2 in targets]
    return np.array(masks, dtype=float)


def _skeleton_block(
    block: ReplicaBlock,
    model: DisorderModel,
    scale: int,
    beta: float,
    laws: Sequence[MassFunction],
    targets: Sequence[Displacement],
    seed: int,
    truncation: Optional[int],
) -> np.ndarray:
    radius = max(law.radius for law in laws)
    values = np.empty((block.size, len(laws), len(targets)))
    for i, replica in enumerate(range(block.start, block.stop)):
        field = sample_field(model, scale, seed, replica, radius=radius, truncation=truncation)
        masks = _target_masks(scale, field.half_width(scale), targets)
        for j, law in enumerate(laws):
            final, _ = forward_pass(field, beta, law.to_slice(field.half_width(0)))
            values[i, j] = np.tensordot(masks, final.values, axes=2) * math.exp(final.log_norm)
    return values


def skeleton_estimates(
    model: DisorderModel,
    scale: int,
    beta: float,
    targets: Sequence[Displacement],
    reps: int,
    seed: int,
    parallel: Optional[ParallelContext] = None,
    grid_max: Optional[int] = None,
    truncation_order: int = 6,
) -> SkeletonEstimate:
    """Estimate ``Q(y)`` for every displacement of ``targets`` on the same replicas.

    Checks:
        * ``Q(y) <= exp(-(|y|_1 - 2)² / 4)`` for every target with ``|y|_1`` in :data:`TAIL_RADII`.

    Raises:
        DomainException: If ``N0 < 16``.

    """
    if scale < MIN_SKELETON_SCALE:
        raise DomainException(f"Skeleton weights need N0 >= {MIN_SKELETON_SCALE}, got {scale}")
    targets = [(int(y[0]), int(y[1])) for y in targets]
    starts: List[StartLaw] = start_grid(math.sqrt(scale) / 2, grid_max or master_config.dirac_grid_max_sites)
    laws = [start.law for start in starts]
    task = partial(
        _skeleton_block,
        model=model,
        scale=scale,
        beta=beta,
        laws=laws,
        targets=targets,
        seed=seed,
        truncation=default_cone_truncation(scale, max(law.radius for law in laws)),
    )
    blocks = run_replicas(task, reps, parallel)

    estimates, labels = [], []
    for t in range(len(targets)):
        per_start = [summarize([np.sqrt(block[:, j, t]) for block in blocks], seed) for j in range(len(laws))]
        best = int(np.argmax([summary.estimate for summary in per_start]))
        estimates.append(per_start[best])
        labels.append(starts[best].label)

    checks = [
        bound_check(f"Gaussian tail of Q at y={y}", summary, gaussian_tail(y))
        for y, summary in zip(targets, estimates)
        if abs(y[0]) + abs(y[1]) in TAIL_RADII
    ]
    result = SkeletonEstimate(scale, beta, targets, estimates, labels, truncation_order, checks)
    logger.info(
        f"Skeleton weights at N0={scale}, beta={beta:.6g}: sum over |y|_1 <= {truncation_order} is "
        f"{result.total:.6g}, bookkeeping sum {bookkeeping_sum(truncation_order):.6g} against exp(-1)"
    )
    return result


def skeleton_q(
    model: DisorderModel,
    scale: int,
    beta: float,
    y: Displacement,
    reps: int,
    seed: int,
    parallel: Optional[ParallelContext] = None,
    grid_max: Optional[int] = None,
) -> McSummary:
    """Estimate ``Q(y)`` for a single displacement."""
    return skeleton_estimates(model, scale, beta, [y], reps, seed, parallel, grid_max).estimates[0]
