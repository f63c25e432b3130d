from typing import (
    NamedTuple,
    Optional,
    Tuple,
    Union,
)

import numpy as np


class CriticalPoint(NamedTuple):
    """Calibrated disorder strength for a horizon ``n`` and an effective disorder parameter ``theta``."""

    n: int
    beta: float
    theta: float
    sigma2: float


class Theta(NamedTuple):
    """Effective disorder parameter, ``value`` is ``None`` for ``theta = -inf`` (no disorder)."""

    value: Optional[float]
    exp_value: float

    @property
    def is_minus_infinity(self) -> bool:
        """Return ``True`` for the sentinel of vanishing disorder."""
        return self.value is None


class PartitionResult(NamedTuple):
    """Partition function in renormalized form: the represented quantity is ``value * exp(log_norm)``."""

    value: Union[float, np.ndarray]
    log_norm: float
    renormalizations: int = 0
    empty_target: bool = False

    @property
    def total(self) -> Union[float, np.ndarray]:
        """Represented value, may overflow for large horizons."""
        return self.value * np.exp(self.log_norm)

    @property
    def log_value(self) -> Union[float, np.ndarray]:
        """Natural logarithm of the represented value."""
        return np.log(self.value) + self.log_norm


class Check(NamedTuple):
    """Outcome of one declared inequality or identity check, ``margin >= 0`` when it holds."""

    name: str
    passed: bool
    margin: float


class McSummary(NamedTuple):
    """Monte Carlo estimate with jackknife standard error over replica blocks."""

    estimate: float
    stderr: float
    reps: int
    seed: int
    config_digest: str = ""
    block_means: Tuple[float, ...] = ()
