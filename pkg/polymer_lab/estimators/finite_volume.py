"""Finite-volume criterion for the half moment.

If ``sup_f E[Z_L(f)^(1/2)] <= 1/300`` over probability laws ``f`` on the disc of radius ``sqrt(L)``, then
``E[Z_N(f)^(1/2)] <= 3 exp(-N / L)`` at every larger horizon. The supremum is estimated over the start grid of
:func:`~polymer_lab.estimators.starts.start_grid`. The constant ``1/300`` depends on the law of the walk; outcomes
within the confidence band of it are flagged and not recalibrated.
"""
import logging
import math
from typing import (
    Any,
    Dict,
    List,
    NamedTuple,
    Optional,
    Sequence,
)

import numpy as np
import pandas as pd
from polymer_lab import master_config
from polymer_lab.disorder import DisorderModel
from polymer_lab.services import ParallelContext
from polymer_lab.static import (
    FINITE_VOLUME_THRESHOLD,
    Check,
    DomainException,
    McSummary,
)
from scipy.stats import linregress

from .replicas import (
    bound_check,
    check_fields,
    summary_fields,
)
from .starts import (
    GridSupremum,
    half_moment_supremum,
    start_grid,
)

logger = logging.getLogger("estimators")

MIN_SCALE = 16


class FiniteVolumeReport(NamedTuple):
    scale: int
    beta: float
    grid: GridSupremum
    satisfied: bool
    near_threshold: bool
    decay: pd.DataFrame
    decay_slope: Optional[float]
    checks: List[Check]

    @property
    def sup(self) -> McSummary:
        return self.grid.sup

    def to_frame(self) -> pd.DataFrame:
        """Estimate of every starting law of the grid."""
        return pd.DataFrame(
            {
                "start": [start.label for start in self.grid.laws],
                "estimate": [summary.estimate for summary in self.grid.estimates],
                "stderr": [summary.stderr for summary in self.grid.estimates],
            }
        )

    def to_summary(self) -> Dict[str, Any]:
        return {
            "L": self.scale,
            "beta": self.beta,
            "sup": summary_fields(self.sup),
            "sup_start": self.grid.argmax.label,
            "threshold": FINITE_VOLUME_THRESHOLD,
            "satisfied": self.satisfied,
            "near_threshold": self.near_threshold,
            "decay_slope": self.decay_slope,
            "decay": self.decay.to_dict(orient="records"),
            "checks": check_fields(self.checks),
        }


def finite_volume_criterion(
    model: DisorderModel,
    scale: int,
    beta: float,
    reps: int,
    seed: int,
    m_list: Sequence[int] = (1, 2, 3),
    parallel: Optional[ParallelContext] = None,
    grid_max: Optional[int] = None,
) -> FiniteVolumeReport:
    """Estimate the grid supremum of ``E[Z_L(f)^(1/2)]`` and, when it is below ``1/300``, its decay in ``m``.

    Checks:
        * ``E[Z_{L/2}(f*)^(1/2)] <= 1`` for the law ``f*`` realizing the supremum;
        * ``E[Z_{mL}(f*)^(1/2)] <= 3 exp(-m)`` for every ``m`` of ``m_list`` once the criterion holds;
        * a fitted decay slope of at most ``-1/2`` per unit of ``m`` over at least two values of ``m``.

    Raises:
        DomainException: If ``L < 16`` or ``m_list`` holds a non-positive entry.

    """
    if scale < MIN_SCALE:
        raise DomainException(f"The finite-volume criterion needs L >= {MIN_SCALE}, got {scale}")
    if any(m < 1 for m in m_list):
        raise DomainException(f"Scale multiples must be positive, got {list(m_list)}")

    grid = half_moment_supremum(model, scale, beta, start_grid(math.sqrt(scale), grid_max), reps, seed, parallel)
    slack = master_config.confidence_sigmas * grid.sup.stderr
    satisfied = grid.sup.estimate + slack <= FINITE_VOLUME_THRESHOLD
    near_threshold = abs(grid.sup.estimate - FINITE_VOLUME_THRESHOLD) <= slack
    logger.info(
        f"Grid sup of E[Z_{scale}^(1/2)] = {grid.sup.estimate:.6g} ± {grid.sup.stderr:.2g} at {grid.argmax.label}, "
        f"criterion {'satisfied' if satisfied else 'not satisfied'} against {FINITE_VOLUME_THRESHOLD:.6g}"
    )
    if near_threshold:
        logger.warning(f"Grid sup at L={scale} is within {slack:.2g} of the finite-volume threshold")

    best = [grid.argmax]
    half = half_moment_supremum(model, scale // 2, beta, best, reps, seed, parallel).sup
    checks = [bound_check("half-scale half moment at most one", half, 1.0)]

    rows = []
    if satisfied:
        for m in m_list:
            estimate = half_moment_supremum(model, m * scale, beta, best, reps, seed, parallel).sup
            bound = 3 * math.exp(-m)
            checks.append(bound_check(f"half moment below 3 exp(-m) at m={m}", estimate, bound))
            rows.append(
                {"m": m, "N": m * scale, "estimate": estimate.estimate, "stderr": estimate.stderr, "bound": bound}
            )
    decay = pd.DataFrame(rows, columns=["m", "N", "estimate", "stderr", "bound"])

    decay_slope = None
    if len(decay) >= 2 and np.all(decay["estimate"] > 0):
        decay_slope = float(linregress(decay["m"], np.log(decay["estimate"])).slope)
        checks.append(Check("decay slope at most -1/2", decay_slope <= -0.5, -0.5 - decay_slope))
    return FiniteVolumeReport(scale, beta, grid, satisfied, near_threshold, decay, decay_slope, checks)
