"""Sample-level audits of two inequalities used by the coarse-graining argument.

Change of measure: for ``A = {Z >= 1}`` and ``K >= 1``, ``Z ∧ K <= K 1_A + Z 1_{A^c}`` replica by replica, so
``E[Z ∧ K] <= K P(A) + E[Z 1_{A^c}]``.

Change of scale: a law on a disc of radius ``B`` splits into at most ``4 B / A`` pieces supported on discs of radius
``A``, and ``x -> x^(1/2)`` is subadditive, so ``sup_{B} E[Z^(1/2)] <= (4 B / A)^(1/2) sup_{A} E[Z^(1/2)]``.
"""
import logging
import math
from typing import (
    List,
    NamedTuple,
    Optional,
    Sequence,
)

import numpy as np
from polymer_lab import master_config
from polymer_lab.disorder import DisorderModel
from polymer_lab.services import ParallelContext
from polymer_lab.static import (
    Check,
    DomainException,
)

from .replicas import (
    batches,
    bound_check,
    summarize,
)
from .starts import (
    GridSupremum,
    half_moment_supremum,
    start_grid,
)

logger = logging.getLogger("estimators")

#: Smallest number of replicas in a batch of the change-of-measure audit.
AUDIT_BATCH_SIZE = 1000

#: Ratio ``B / A`` of the disc radii compared by the change-of-scale audit.
SCALE_RATIO = 4


class ScaleAudit(NamedTuple):
    small: GridSupremum
    large: GridSupremum
    factor: float
    check: Check


def change_of_measure_audit(
    blocks: Sequence[np.ndarray], seed: int, cap: float = 2.0, batch_size: int = AUDIT_BATCH_SIZE
) -> List[Check]:
    """Audit ``E[Z ∧ K] <= K P(Z >= 1) + E[Z 1_{Z < 1}]`` on consecutive batches of partition functions.

    Raises:
        DomainException: If ``K < 1``.

    """
    if cap < 1:
        raise DomainException(f"The change of measure needs K >= 1, got {cap}")
    checks = []
    for index, batch in enumerate(batches(blocks, batch_size)):
        gaps = [np.where(block >= 1, cap, block) - np.minimum(block, cap) for block in batch]
        checks.append(bound_check(f"change of measure, batch {index}", summarize(gaps, seed), 0.0, upper=False))
    return checks


def change_of_scale_audit(
    model: DisorderModel,
    horizon: int,
    beta: float,
    radius: float,
    reps: int,
    seed: int,
    parallel: Optional[ParallelContext] = None,
    grid_max: Optional[int] = None,
) -> ScaleAudit:
    """Compare the grid suprema of ``E[Z_N(f)^(1/2)]`` over discs of radius ``A = radius`` and ``B = 4 A``.

    Both grids are evaluated on the same replicas.

    Raises:
        DomainException: If ``radius`` is not positive.

    """
    if radius <= 0:
        raise DomainException(f"Disc radius must be positive, got {radius}")
    grid_max = grid_max or master_config.dirac_grid_max_sites
    small_laws, large_laws = start_grid(radius, grid_max), start_grid(SCALE_RATIO * radius, grid_max)
    both = half_moment_supremum(model, horizon, beta, small_laws + large_laws, reps, seed, parallel)
    small = GridSupremum(small_laws, both.estimates[: len(small_laws)])
    large = GridSupremum(large_laws, both.estimates[len(small_laws) :])

    factor = math.sqrt(4 * SCALE_RATIO)
    scaled = small.sup._replace(estimate=factor * small.sup.estimate, stderr=factor * small.sup.stderr)
    check = bound_check("change of scale", large.sup, scaled.estimate, bound_stderr=scaled.stderr)
    logger.info(
        f"Change of scale at N={horizon}: sup over radius {SCALE_RATIO * radius:g} is {large.sup.estimate:.6g}, "
        f"{factor:g} x sup over radius {radius:g} is {scaled.estimate:.6g}"
    )
    return ScaleAudit(small, large, factor, check)
