"""Truncated means and fractional moments of ``Z_N(f)``.

For any ``Z >= 0`` with ``E[Z] = 1`` the two decay metrics are comparable:

    E[Z ∧ 1] <= E[Z^(1/2)] <= sqrt(2) E[Z ∧ 1]^(1/2),

and the second moment bounds the truncated mean from below, ``E[Z ∧ 1] >= 1 / (1 + E[Z²])``.
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
from polymer_lab.disorder import DisorderModel
from polymer_lab.moments import (
    paley_zygmund_floor,
    second_moment_field,
)
from polymer_lab.moments.mass import MassFunction
from polymer_lab.services import ParallelContext
from polymer_lab.static import (
    Check,
    DomainException,
    McSummary,
)

from .replicas import (
    batches,
    bound_check,
    jackknife,
    partition_samples,
    summarize,
)

logger = logging.getLogger("estimators")

#: Smallest number of replicas in a batch of the sandwich audit.
SANDWICH_BATCH_SIZE = 1000


class FractionalMoment(NamedTuple):
    gamma: float
    moment: McSummary
    truncated_mean: McSummary
    checks: List[Check]


def _check_probability(f: MassFunction) -> None:
    if not f.is_probability():
        raise DomainException(f"Initial condition must be a probability mass function, its total is {f.total:.17g}")


def truncated_mean(
    model: DisorderModel,
    horizon: int,
    beta: float,
    f: MassFunction,
    reps: int,
    seed: int,
    parallel: Optional[ParallelContext] = None,
    truncation: Optional[int] = None,
) -> McSummary:
    """Estimate ``E[Z_N(f) ∧ 1]``.

    Fields are truncated as in :func:`~polymer_lab.estimators.replicas.partition_samples`.

    Raises:
        DomainException: If ``f`` is not a probability mass function.

    """
    _check_probability(f)
    blocks = partition_samples(model, horizon, beta, f, reps, seed, parallel, truncation=truncation)
    summary = summarize([np.minimum(block, 1.0) for block in blocks], seed)
    logger.info(f"E[Z_{horizon} ∧ 1] = {summary.estimate:.6g} ± {summary.stderr:.2g} (beta={beta:.6g})")
    return summary


def paley_zygmund_check(summary: McSummary, horizon: int, sigma2: float, f: MassFunction) -> Check:
    """Check ``E[Z ∧ 1] >= 1 / (1 + E[Z²])`` with the exact second moment."""
    floor = paley_zygmund_floor(second_moment_field(horizon, sigma2, f))
    return bound_check("truncated mean above Paley-Zygmund floor", summary, floor, upper=False)


def _sandwich_gap(values: np.ndarray) -> float:
    # sqrt(2) E[Z ∧ 1]^(1/2) - E[Z^(1/2)] on columns (Z ∧ 1, Z^(1/2))
    return math.sqrt(2 * math.fsum(values[:, 0]) / len(values)) - math.fsum(values[:, 1]) / len(values)


def sandwich_checks(blocks: Sequence[np.ndarray], seed: int, batch_size: int = SANDWICH_BATCH_SIZE) -> List[Check]:
    """Audit ``E[Z ∧ 1] <= E[Z^(1/2)] <= sqrt(2) E[Z ∧ 1]^(1/2)`` on consecutive batches of replicas.

    The lower inequality holds replica by replica, so only the upper one needs the jackknife.
    """
    checks = []
    for index, batch in enumerate(batches(blocks, batch_size)):
        pairs = [np.stack([np.minimum(block, 1.0), np.sqrt(block)], axis=1) for block in batch]
        lower = min(float(np.min(pair[:, 1] - pair[:, 0])) for pair in pairs)
        checks.append(Check(f"sandwich lower, batch {index}", lower >= 0, lower))
        estimate, stderr = jackknife(pairs, _sandwich_gap)
        gap = McSummary(estimate, stderr, sum(len(pair) for pair in pairs), seed)
        checks.append(bound_check(f"sandwich upper, batch {index}", gap, 0.0, upper=False))
    return checks


def fractional_moment(
    model: DisorderModel,
    horizon: int,
    beta: float,
    f: MassFunction,
    gamma: float,
    reps: int,
    seed: int,
    parallel: Optional[ParallelContext] = None,
    truncation: Optional[int] = None,
) -> FractionalMoment:
    """Estimate ``E[Z_N(f)^gamma]`` and audit the sandwich inequality on the same replicas.

    Raises:
        DomainException: If ``gamma`` is outside ``[0, 1]`` or ``f`` is not a probability mass function.

    """
    if not 0 <= gamma <= 1:
        raise DomainException(f"Fractional moments need 0 <= gamma <= 1, got {gamma}")
    _check_probability(f)
    blocks = partition_samples(model, horizon, beta, f, reps, seed, parallel, truncation=truncation)
    moment = summarize([np.power(block, gamma) for block in blocks], seed)
    truncated = summarize([np.minimum(block, 1.0) for block in blocks], seed)
    checks = sandwich_checks(blocks, seed)
    logger.info(
        f"E[Z_{horizon}^{gamma:g}] = {moment.estimate:.6g} ± {moment.stderr:.2g}, "
        f"E[Z ∧ 1] = {truncated.estimate:.6g} ± {truncated.stderr:.2g} (beta={beta:.6g})"
    )
    return FractionalMoment(gamma, moment, truncated, checks)
