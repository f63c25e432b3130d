"""Replica plumbing shared by the Monte Carlo estimators.

Every estimator evaluates one number (or a short vector) per replica, groups replicas in the blocks of
:func:`~polymer_lab.services.replica_blocks` and reduces the blocks in block order. Standard errors come from the
delete-one-block jackknife, so an estimate and its error depend on the master seed and the replica count only.
"""
import logging
import math
from functools import partial
from typing import (
    Any,
    Callable,
    Dict,
    List,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np
from polymer_lab import master_config
from polymer_lab.disorder import DisorderModel
from polymer_lab.engine import (
    default_cone_truncation,
    partition_field,
    sample_field,
    sizebias_sample,
)
from polymer_lab.moments.mass import MassFunction
from polymer_lab.services import (
    ParallelContext,
    ReplicaBlock,
    execute_blocks,
    replica_blocks,
)
from polymer_lab.static import (
    Check,
    DomainException,
    McSummary,
)

logger = logging.getLogger("estimators")

#: Function of the pooled replica values of all retained blocks.
Statistic = Callable[[np.ndarray], float]

#: Size-biased replicas are numbered from here so that their streams never coincide with plain replicas.
TILTED_REPLICA_OFFSET = 2 ** 40


def run_replicas(
    task: Callable[[ReplicaBlock], np.ndarray], reps: int, parallel: Optional[ParallelContext] = None
) -> List[np.ndarray]:
    """Evaluate ``task`` on the blocks of ``reps`` replicas and return the per-block values in block order."""
    if reps < 2:
        raise DomainException(f"Monte Carlo estimates need at least 2 replicas, got {reps}")
    return execute_blocks(task, replica_blocks(reps), parallel)


def jackknife(blocks: Sequence[np.ndarray], statistic: Statistic) -> Tuple[float, float]:
    """Return ``statistic`` of the pooled values and its delete-one-block jackknife standard error.

    Args:
        blocks: Per-block arrays, the first axis runs over replicas.
        statistic: Function of a pooled array.

    Raises:
        DomainException: For fewer than two blocks.

    """
    if len(blocks) < 2:
        raise DomainException(f"The jackknife needs at least two replica blocks, got {len(blocks)}")
    pooled = np.concatenate(blocks)
    estimate = float(statistic(pooled))

    bounds = np.cumsum([0] + [len(block) for block in blocks])
    leave_out = np.array(
        [statistic(np.delete(pooled, np.s_[bounds[i] : bounds[i + 1]], axis=0)) for i in range(len(blocks))]
    )
    groups = len(blocks)
    spread = math.fsum(np.square(leave_out - leave_out.mean()))
    return estimate, math.sqrt((groups - 1) / groups * spread)


def exact_mean(values: np.ndarray) -> float:
    """Correctly rounded mean of a replica vector."""
    return math.fsum(values) / len(values)


def sample_variance(values: np.ndarray) -> float:
    """Unbiased variance of a replica vector."""
    centred = values - exact_mean(values)
    return math.fsum(centred * centred) / (len(values) - 1)


def sample_covariance(values: np.ndarray) -> float:
    """Unbiased covariance of the two columns of a replica array."""
    first = values[:, 0] - exact_mean(values[:, 0])
    second = values[:, 1] - exact_mean(values[:, 1])
    return math.fsum(first * second) / (len(values) - 1)


def summarize(blocks: Sequence[np.ndarray], seed: int, statistic: Statistic = exact_mean) -> McSummary:
    """Reduce per-block replica values to a :class:`~polymer_lab.static.McSummary`.

    The block means recorded in the summary are the means of the first column.
    """
    estimate, stderr = jackknife(blocks, statistic)
    reps = sum(len(block) for block in blocks)
    block_means = tuple(exact_mean(np.reshape(block, (len(block), -1))[:, 0]) for block in blocks)
    return McSummary(estimate, stderr, reps, seed, block_means=block_means)


def summary_fields(summary: McSummary) -> Dict[str, Any]:
    """JSON fields of an estimate."""
    return {"estimate": summary.estimate, "stderr": summary.stderr, "reps": summary.reps}


def check_fields(checks: Sequence[Check]) -> List[Dict[str, Any]]:
    """JSON records ``{name, pass, margin}`` of declared checks."""
    return [{"name": check.name, "pass": check.passed, "margin": check.margin} for check in checks]


def column(blocks: Sequence[np.ndarray], index: int) -> List[np.ndarray]:
    """Select one column of every block."""
    return [block[:, index] for block in blocks]


def batches(blocks: Sequence[np.ndarray], min_size: int) -> List[List[np.ndarray]]:
    """Group consecutive blocks into batches of at least ``min_size`` replicas.

    A short remainder joins the last batch, and fewer than ``min_size`` replicas form a single batch.
    """
    grouped: List[List[np.ndarray]] = [[]]
    count = 0
    for block in blocks:
        if count >= min_size:
            grouped.append([])
            count = 0
        grouped[-1].append(block)
        count += len(block)
    if len(grouped) > 1 and count < min_size:
        grouped[-2].extend(grouped.pop())
    return grouped


def bound_check(name: str, summary: McSummary, bound: float, upper: bool = True, bound_stderr: float = 0.0) -> Check:
    """Check ``estimate <= bound`` (or ``>=`` with ``upper=False``) with the configured number of standard errors.

    ``bound_stderr`` is the standard error of a bound that is itself estimated.
    """
    slack = master_config.confidence_sigmas * math.hypot(summary.stderr, bound_stderr)
    margin = bound + slack - summary.estimate if upper else summary.estimate + slack - bound
    return Check(name, bool(margin >= 0), float(margin))


def agreement_check(name: str, first: McSummary, second: McSummary) -> Check:
    """Check that two estimates of one quantity agree within their combined standard error."""
    slack = master_config.confidence_sigmas * math.hypot(first.stderr, second.stderr)
    margin = slack - abs(first.estimate - second.estimate)
    return Check(name, bool(margin >= 0), float(margin))


def exact_check(name: str, value: float, expected: float, rel_tol: float) -> Check:
    """Check a deterministic value against an exact one."""
    margin = rel_tol * max(abs(expected), 1.0) - abs(value - expected)
    return Check(name, bool(margin >= 0), float(margin))


def _partition_block(
    block: ReplicaBlock,
    model: DisorderModel,
    horizon: int,
    beta: float,
    f: MassFunction,
    seed: int,
    truncation: Optional[int],
) -> np.ndarray:
    if beta == 0:
        # the environment does not enter
        return np.full(block.size, f.total)
    values = np.empty(block.size)
    for i, replica in enumerate(range(block.start, block.stop)):
        field = sample_field(model, horizon, seed, replica, radius=f.radius, parity=f.parity, truncation=truncation)
        values[i] = partition_field(field, beta, f).total
    return values


def _sizebiased_partition_block(
    block: ReplicaBlock,
    model: DisorderModel,
    horizon: int,
    beta: float,
    f: MassFunction,
    seed: int,
    truncation: Optional[int],
) -> np.ndarray:
    if beta == 0:
        return np.full(block.size, f.total)
    values = np.empty(block.size)
    for i, replica in enumerate(range(block.start, block.stop)):
        sample = sizebias_sample(model, beta, horizon, f, seed, TILTED_REPLICA_OFFSET + replica, truncation)
        values[i] = partition_field(sample.field, beta, f).total
    return values


def partition_samples(
    model: DisorderModel,
    horizon: int,
    beta: float,
    f: MassFunction,
    reps: int,
    seed: int,
    parallel: Optional[ParallelContext] = None,
    size_biased: bool = False,
    truncation: Optional[int] = None,
) -> List[np.ndarray]:
    """Draw ``Z_N(f)`` for ``reps`` independent replicas, under ``P`` or under the size-biased law.

    Fields are truncated at ``truncation``, by default at :func:`~polymer_lab.engine.default_cone_truncation`.
    At ``beta = 0`` every replica equals ``sum f``.

    Returns:
        Per-block arrays of partition functions in block order.

    """
    block_task = _sizebiased_partition_block if size_biased else _partition_block
    if truncation is None:
        truncation = default_cone_truncation(horizon, f.radius)
    task = partial(block_task, model=model, horizon=horizon, beta=beta, f=f, seed=seed, truncation=truncation)
    blocks = run_replicas(task, reps, parallel)
    logger.debug(
        f"Sampled {reps} partition functions (N={horizon}, beta={beta:.6g}, size_biased={size_biased}, seed={seed})"
    )
    return blocks
