"""Quenched free energy ``F(beta) = lim E[log Z_N] / N`` and the gradient of ``log Z_N``.

``E[log Z_N]`` is superadditive in ``N``, so every finite-horizon value ``E[log Z_N] / N`` is a lower bound of
``F(beta)``. The estimate reported is the value at the largest horizon, together with the change from the previous
horizon as a finite-size band; no convergence rate is extrapolated.
"""
import logging
import math
from functools import partial
from typing import (
    List,
    NamedTuple,
    Optional,
    Sequence,
)

import numpy as np
import pandas as pd
from polymer_lab import master_config
from polymer_lab.disorder import DisorderModel
from polymer_lab.engine import (
    default_cone_truncation,
    grad_log_norm,
    partition_field,
    sample_field,
)
from polymer_lab.moments.mass import dirac
from polymer_lab.services import (
    ParallelContext,
    ReplicaBlock,
)
from polymer_lab.static import (
    Check,
    DomainException,
    McSummary,
)

from .replicas import (
    bound_check,
    run_replicas,
    summarize,
)

logger = logging.getLogger("estimators")


class FreeEnergyEstimate(NamedTuple):
    """Per-horizon averages of ``log Z_N / N`` and the largest-horizon estimate of ``F(beta)``."""

    beta: float
    horizons: List[int]
    per_horizon: List[McSummary]
    band: float
    checks: List[Check]

    @property
    def estimate(self) -> McSummary:
        return self.per_horizon[-1]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "N": self.horizons,
                "mean_log_z_per_n": [summary.estimate for summary in self.per_horizon],
                "stderr": [summary.stderr for summary in self.per_horizon],
            }
        )


def _log_partition_block(
    block: ReplicaBlock, model: DisorderModel, horizon: int, beta: float, seed: int, gradient: bool
) -> np.ndarray:
    values = np.empty(block.size)
    truncation = default_cone_truncation(horizon)
    for i, replica in enumerate(range(block.start, block.stop)):
        field = sample_field(model, horizon, seed, replica, truncation=truncation)
        values[i] = grad_log_norm(field, beta) if gradient else partition_field(field, beta, dirac()).log_value
    return values


def mean_log_partition(
    model: DisorderModel,
    horizon: int,
    beta: float,
    reps: int,
    seed: int,
    parallel: Optional[ParallelContext] = None,
) -> McSummary:
    """Estimate ``E[log Z_N]`` from the origin, exactly ``0`` at ``beta = 0``."""
    if beta == 0:
        return McSummary(0.0, 0.0, reps, seed)
    task = partial(_log_partition_block, model=model, horizon=horizon, beta=beta, seed=seed, gradient=False)
    return summarize(run_replicas(task, reps, parallel), seed)


def gradient_norm(
    model: DisorderModel,
    horizon: int,
    beta: float,
    reps: int,
    seed: int,
    parallel: Optional[ParallelContext] = None,
) -> McSummary:
    """Estimate ``E|grad log Z_N|²``, the gradient taken over every cell of the environment."""
    task = partial(_log_partition_block, model=model, horizon=horizon, beta=beta, seed=seed, gradient=True)
    return summarize(run_replicas(task, reps, parallel), seed)


def _per_step(summary: McSummary, horizon: int) -> McSummary:
    return summary._replace(
        estimate=summary.estimate / horizon,
        stderr=summary.stderr / horizon,
        block_means=tuple(mean / horizon for mean in summary.block_means),
    )


def free_energy(
    model: DisorderModel,
    beta: float,
    horizons: Sequence[int],
    reps: int,
    seed: int,
    parallel: Optional[ParallelContext] = None,
) -> FreeEnergyEstimate:
    """Estimate ``E[log Z_N] / N`` on an increasing grid of horizons.

    Checks:
        * the largest-horizon value is negative with the configured confidence (``beta > 0`` only);
        * the value at a multiple of the previous horizon is not smaller, as superadditivity requires.

    Raises:
        DomainException: For a negative strength or a grid that is not increasing.

    """
    horizons = list(horizons)
    if beta < 0:
        raise DomainException(f"Free energy needs beta >= 0, got {beta}")
    if not horizons or any(second <= first for first, second in zip(horizons, horizons[1:])) or horizons[0] < 1:
        raise DomainException(f"Horizons must be positive and increasing, got {horizons}")

    per_horizon = [_per_step(mean_log_partition(model, n, beta, reps, seed, parallel), n) for n in horizons]
    band = abs(per_horizon[-1].estimate - per_horizon[-2].estimate) if len(horizons) > 1 else math.inf

    checks = []
    if beta > 0:
        upper = per_horizon[-1].estimate + master_config.confidence_sigmas * per_horizon[-1].stderr
        checks.append(Check("free energy negative", upper < 0, -upper))
    for (m, previous), (n, current) in zip(zip(horizons, per_horizon), zip(horizons[1:], per_horizon[1:])):
        if n % m == 0:
            name = f"superadditivity from N={m} to N={n}"
            checks.append(bound_check(name, current, previous.estimate, upper=False, bound_stderr=previous.stderr))
    estimate = per_horizon[-1]
    logger.info(
        f"Free energy at beta={beta:.6g}: {estimate.estimate:.6g} ± {estimate.stderr:.2g} "
        f"(N={horizons[-1]}, finite-size band {band:.2g})"
    )
    return FreeEnergyEstimate(beta, horizons, per_horizon, band, checks)


def log_gap_to_critical_scale(estimate: float, sigma2: float) -> float:
    """Return ``log|F| + pi / sigma²``, expected to stay of order one."""
    if estimate >= 0:
        return math.nan
    return math.log(-estimate) + math.pi / sigma2
