"""Monte Carlo side of the proxy: size-biased variance and the Chebyshev event ``A = {X >= E~_inf / 2}``.

Under ``P`` the proxy is centred, so ``P(A) <= 4 Var(X) / E~_inf²``. Under the environment tilted along a walk from
``x`` its mean is at least ``E~_inf``, so ``P~_x(A^c) <= 4 Var~_x(X) / E~_inf²``. Both bounds are compared with the
empirical frequencies.
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
    Tuple,
)

import numpy as np
from polymer_lab.disorder import DisorderModel
from polymer_lab.engine import (
    default_cone_truncation,
    sample_field,
    sizebias_sample,
)
from polymer_lab.estimators.replicas import (
    TILTED_REPLICA_OFFSET,
    agreement_check,
    bound_check,
    check_fields,
    run_replicas,
    sample_covariance,
    sample_variance,
    summarize,
    summary_fields,
)
from polymer_lab.moments import dirac
from polymer_lab.services import (
    ParallelContext,
    ReplicaBlock,
)
from polymer_lab.static import (
    Check,
    DomainException,
    McSummary,
    ProxyEventUndefinedException,
    ProxyMode,
)

from .exact_moments import (
    ProxyMoments,
    proxy_exact_moments,
)
from .strips import StripDecomposition
from .value import strip_values

logger = logging.getLogger("proxy")

_MIN_TILTED_REPS = 1000


class TiltedProxyEstimate(NamedTuple):
    """Size-biased mean and variance of the proxy for walks started at ``x``."""

    x: Tuple[int, int]
    mean: McSummary
    variance: McSummary
    values: List[np.ndarray]


class ProxyReport(NamedTuple):
    """Exact moments, Monte Carlo estimates and Chebyshev bounds of the proxy event."""

    strips: StripDecomposition
    beta: float
    sigma2: float
    truncation: Optional[int]
    moments: ProxyMoments
    threshold: float
    mean: McSummary
    variance: McSummary
    event_probability: McSummary
    tilted: TiltedProxyEstimate
    tilted_complement_probability: McSummary
    checks: List[Check]

    @property
    def chebyshev_bound(self) -> float:
        """``4 Var(X) / E~_inf²``."""
        return 4 * self.moments.variance / self.moments.tilted_inf ** 2

    @property
    def tilted_chebyshev_bound(self) -> float:
        """``4 Var~_x(X) / E~_inf²`` with the estimated size-biased variance."""
        return 4 * self.tilted.variance.estimate / self.moments.tilted_inf ** 2

    def to_summary(self) -> Dict[str, Any]:
        """JSON-serializable view of the report."""
        return {
            "strips": self.strips.provenance(),
            "beta": self.beta,
            "sigma2": self.sigma2,
            "K": self.truncation,
            "variance_exact": self.moments.variance,
            "tilted_inf": self.moments.tilted_inf,
            "tilted_argmin": list(self.moments.argmin),
            "threshold": self.threshold,
            "chebyshev_bound": self.chebyshev_bound,
            "tilted_chebyshev_bound": self.tilted_chebyshev_bound,
            "mean": summary_fields(self.mean),
            "variance": summary_fields(self.variance),
            "event_probability": summary_fields(self.event_probability),
            "tilted_mean": summary_fields(self.tilted.mean),
            "tilted_variance": summary_fields(self.tilted.variance),
            "tilted_complement_probability": summary_fields(self.tilted_complement_probability),
            "checks": check_fields(self.checks),
        }


def _exact(value: float, reps: int, seed: int) -> McSummary:
    return McSummary(value, 0.0, reps, seed)


def _mode(truncation: Optional[int]) -> ProxyMode:
    return ProxyMode.untruncated if truncation is None else ProxyMode.truncated


def _plain_block(
    block: ReplicaBlock,
    model: DisorderModel,
    beta: float,
    strips: StripDecomposition,
    truncation: Optional[int],
    seed: int,
) -> np.ndarray:
    field_truncation = default_cone_truncation(strips.n_effective)
    values = np.empty((block.size, strips.m))
    for i, replica in enumerate(range(block.start, block.stop)):
        field = sample_field(model, strips.n_effective, seed, replica, truncation=field_truncation)
        values[i] = strip_values(field, beta, strips, truncation, _mode(truncation))
    return values


def _tilted_block(
    block: ReplicaBlock,
    model: DisorderModel,
    beta: float,
    strips: StripDecomposition,
    truncation: Optional[int],
    x: Tuple[int, int],
    seed: int,
) -> np.ndarray:
    f = dirac(x)
    field_truncation = default_cone_truncation(strips.n_effective, f.radius)
    values = np.empty((block.size, strips.m))
    for i, replica in enumerate(range(block.start, block.stop)):
        sample = sizebias_sample(
            model, beta, strips.n_effective, f, seed, TILTED_REPLICA_OFFSET + replica, field_truncation
        )
        values[i] = strip_values(sample.field, beta, strips, truncation, _mode(truncation))
    return values


def proxy_samples(
    model: DisorderModel,
    beta: float,
    strips: StripDecomposition,
    reps: int,
    seed: int,
    truncation: Optional[int] = None,
    parallel: Optional[ParallelContext] = None,
) -> List[np.ndarray]:
    """Draw the strip components of the proxy under ``P``, one row per replica and one column per even strip."""
    task = partial(_plain_block, model=model, beta=beta, strips=strips, truncation=truncation, seed=seed)
    return run_replicas(task, reps, parallel)


def proxy_tilted_variance_mc(
    model: DisorderModel,
    beta: float,
    strips: StripDecomposition,
    x: Tuple[int, int],
    reps: int,
    seed: int,
    truncation: Optional[int] = None,
    parallel: Optional[ParallelContext] = None,
) -> TiltedProxyEstimate:
    """Estimate ``E~_x[X]`` and ``Var~_x(X)`` from environments tilted along walks started at ``x``.

    Args:
        model: Environment law.
        beta: Disorder strength.
        strips: Strip decomposition.
        x: Even starting point of the tilting walk.
        reps: Number of size-biased replicas, at least 1000.
        seed: Master seed.
        truncation: Largest cell-set size of the truncated proxy, ``None`` for the full proxy.
        parallel: Worker pool for replica blocks.

    Raises:
        DomainException: For fewer than 1000 replicas.

    """
    if reps < _MIN_TILTED_REPS:
        raise DomainException(f"Size-biased proxy estimates need at least {_MIN_TILTED_REPS} replicas, got {reps}")
    task = partial(_tilted_block, model=model, beta=beta, strips=strips, truncation=truncation, x=x, seed=seed)
    blocks = [block.sum(axis=1) for block in run_replicas(task, reps, parallel)]
    estimate = TiltedProxyEstimate(
        x, summarize(blocks, seed), summarize(blocks, seed, statistic=sample_variance), blocks
    )
    logger.info(
        f"Size-biased proxy at x={x}: mean={estimate.mean.estimate:.6g} +- {estimate.mean.stderr:.2g}, "
        f"variance={estimate.variance.estimate:.6g} +- {estimate.variance.stderr:.2g}"
    )
    return estimate


def _indicator(blocks: List[np.ndarray], threshold: float, above: bool) -> List[np.ndarray]:
    return [(block >= threshold if above else block < threshold).astype(float) for block in blocks]


def event_report(
    model: DisorderModel,
    beta: float,
    strips: StripDecomposition,
    reps: int,
    seed: int,
    truncation: Optional[int] = None,
    sites: Optional[np.ndarray] = None,
    parallel: Optional[ParallelContext] = None,
) -> ProxyReport:
    """Compare the empirical probabilities of the proxy event with their Chebyshev bounds.

    Args:
        model: Environment law.
        beta: Disorder strength.
        strips: Strip decomposition.
        reps: Replicas of each of the plain and the size-biased samples.
        seed: Master seed.
        truncation: Largest cell-set size of the truncated proxy, ``None`` for the full proxy.
        sites: Grid of starting points for ``E~_inf``.
        parallel: Worker pool for replica blocks.

    Raises:
        ProxyEventUndefinedException: If the size-biased mean is not positive on the grid.

    """
    sigma2 = model.pair_variance(beta)
    moments = proxy_exact_moments(strips, sigma2, truncation, sites)
    if not moments.tilted_inf > 0:
        raise ProxyEventUndefinedException(
            f"Proxy event undefined, tilted mean not positive: "
            f"min of E~[X] over the grid is {moments.tilted_inf!r} (beta={beta})"
        )
    threshold = moments.tilted_inf / 2

    components = proxy_samples(model, beta, strips, reps, seed, truncation, parallel)
    blocks = [block.sum(axis=1) for block in components]
    mean = summarize(blocks, seed)
    variance = summarize(blocks, seed, statistic=sample_variance)
    event = summarize(_indicator(blocks, threshold, above=True), seed)

    tilted = proxy_tilted_variance_mc(model, beta, strips, moments.argmin, reps, seed, truncation, parallel)
    complement = summarize(_indicator(tilted.values, threshold, above=False), seed)

    bound = 4 * moments.variance / moments.tilted_inf ** 2
    tilted_bound = 4 * tilted.variance.estimate / moments.tilted_inf ** 2
    checks = [
        agreement_check("proxy mean vanishes", mean, _exact(0.0, reps, seed)),
        agreement_check("exact variance", variance, _exact(moments.variance, reps, seed)),
        agreement_check("exact size-biased mean", tilted.mean, _exact(moments.tilted_inf, reps, seed)),
        bound_check("event probability below Chebyshev bound", event, bound),
        bound_check(
            "tilted complement below Chebyshev bound",
            complement,
            tilted_bound,
            bound_stderr=4 * tilted.variance.stderr / moments.tilted_inf ** 2,
        ),
    ]
    if strips.m >= 2:
        covariance = summarize([block[:, :2] for block in components], seed, statistic=sample_covariance)
        checks.append(agreement_check("first strips uncorrelated", covariance, _exact(0.0, reps, seed)))

    report = ProxyReport(
        strips, beta, sigma2, truncation, moments, threshold, mean, variance, event, tilted, complement, checks
    )
    failed = [check.name for check in checks if not check.passed]
    logger.info(
        f"Proxy event at N_eff={strips.n_effective}: P(A)={event.estimate:.4g} (bound {bound:.4g}), "
        f"P~(A^c)={complement.estimate:.4g} (bound {tilted_bound:.4g}), failed checks: {failed or 'none'}"
    )
    return report


def event_bound_sum(report: ProxyReport) -> Tuple[float, float]:
    """Return ``P(A) + P~(A^c)`` and its standard error, the quantity bounding ``E[Z ∧ 1]`` from above.

    The standard errors add in quadrature. This holds because the size-biased replicas run on streams shifted by
    ``TILTED_REPLICA_OFFSET``, independent of the replicas estimating ``P(A)``.
    """
    total = report.event_probability.estimate + report.tilted_complement_probability.estimate
    stderr = math.hypot(report.event_probability.stderr, report.tilted_complement_probability.stderr)
    return total, stderr

