"""Two routes to ``E[Z ∧ 1] = 1 - d_TV(P, P~)``.

The size-biased law ``P~ = Z . P`` and ``P`` differ in total variation by ``sup_A (P~(A) - P(A))``, attained at
``A = {Z >= 1}``, so ``E[Z ∧ 1] = P(Z >= 1) + P~(Z < 1)``. Route one averages ``Z ∧ 1`` under ``P``; route two
counts the event under ``P`` and its complement under size-biased sampling.
"""
import logging
import math
from typing import (
    List,
    NamedTuple,
    Optional,
)

import numpy as np
from polymer_lab.disorder import DisorderModel
from polymer_lab.moments.mass import MassFunction
from polymer_lab.services import ParallelContext
from polymer_lab.static import (
    Check,
    DomainException,
    McSummary,
)

from .replicas import (
    agreement_check,
    bound_check,
    partition_samples,
    summarize,
)

logger = logging.getLogger("estimators")


class TvIdentity(NamedTuple):
    truncated_mean: McSummary
    event_route: McSummary
    event_probability: McSummary
    tilted_complement_probability: McSummary
    checks: List[Check]


def sizebias_tv(
    model: DisorderModel,
    horizon: int,
    beta: float,
    f: MassFunction,
    reps: int,
    seed: int,
    parallel: Optional[ParallelContext] = None,
    truncation: Optional[int] = None,
) -> TvIdentity:
    """Estimate ``E[Z_N(f) ∧ 1]`` by both routes.

    The event route adds ``P(Z >= 1)`` and ``P~(Z < 1)``. Their standard errors combine in quadrature: the
    size-biased replicas are shifted by ``TILTED_REPLICA_OFFSET`` and so draw from streams disjoint from the plain
    replicas, which makes the two estimates independent.

    Checks:
        * both routes agree within their combined standard error;
        * both are at most ``1``.

    Raises:
        DomainException: If ``f`` is not a probability mass function.

    """
    if not f.is_probability():
        raise DomainException(f"Initial condition must be a probability mass function, its total is {f.total:.17g}")
    if beta == 0:
        # Z is the constant 1 and both routes are exact
        one = McSummary(1.0, 0.0, reps, seed)
        checks = [
            agreement_check("routes agree", one, one),
            bound_check("truncated mean at most one", one, 1.0),
            bound_check("event route at most one", one, 1.0),
        ]
        return TvIdentity(one, one, one, McSummary(0.0, 0.0, reps, seed), checks)

    plain = partition_samples(model, horizon, beta, f, reps, seed, parallel, truncation=truncation)
    tilted = partition_samples(model, horizon, beta, f, reps, seed, parallel, size_biased=True, truncation=truncation)

    truncated = summarize([np.minimum(block, 1.0) for block in plain], seed)
    event = summarize([(block >= 1).astype(float) for block in plain], seed)
    complement = summarize([(block < 1).astype(float) for block in tilted], seed)
    route = McSummary(event.estimate + complement.estimate, math.hypot(event.stderr, complement.stderr), reps, seed)
    checks = [
        agreement_check("routes agree", truncated, route),
        bound_check("truncated mean at most one", truncated, 1.0),
        bound_check("event route at most one", route, 1.0),
    ]
    logger.info(
        f"E[Z_{horizon} ∧ 1]: {truncated.estimate:.6g} ± {truncated.stderr:.2g} by truncation, "
        f"{route.estimate:.6g} ± {route.stderr:.2g} by P(Z >= 1) + P~(Z < 1)"
    )
    return TvIdentity(truncated, route, event, complement, checks)
