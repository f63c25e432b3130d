import logging
import math
from dataclasses import dataclass
from typing import (
    Dict,
    List,
    Tuple,
)

from polymer_lab.static import (
    DomainException,
    StripsTooThinException,
)

logger = logging.getLogger("proxy")

_MIN_STRIP_WIDTH = 4


@dataclass(frozen=True)
class StripDecomposition:
    """Partition of ``1..N_eff`` into ``2M`` strips ``I_j = ((j - 1) N~, j N~]`` of width ``N~``.

    The proxy statistic only uses the even strips ``I_2, I_4, ..., I_2M``; the odd strips separate them in time.
    """

    n: int
    n_effective: int
    n_tilde: int
    eta: float
    m: int

    def __post_init__(self) -> None:
        if self.n_effective != 2 * self.m * self.n_tilde or self.n_effective > self.n:
            raise DomainException(
                f"Strips of width {self.n_tilde} and M={self.m} do not tile N_eff={self.n_effective} <= N={self.n}"
            )

    def strip(self, j: int) -> Tuple[int, int]:
        """Return ``(s, t)`` with ``I_j = s + 1 .. t``."""
        if not 1 <= j <= 2 * self.m:
            raise DomainException(f"Strip index {j} is outside 1..{2 * self.m}")
        return (j - 1) * self.n_tilde, j * self.n_tilde

    def even_strips(self) -> List[Tuple[int, int]]:
        """Bounds of ``I_2, I_4, ..., I_2M``."""
        return [self.strip(2 * ell) for ell in range(1, self.m + 1)]

    def provenance(self) -> Dict[str, str]:
        return {
            "N": str(self.n),
            "N_effective": str(self.n_effective),
            "N_tilde": str(self.n_tilde),
            "eta": repr(self.eta),
            "M": str(self.m),
        }


def make_strips(n: int, eta: float) -> StripDecomposition:
    """Decompose ``1..N`` into strips of width ``N~ = floor(N / 2M)`` with ``M = ceil(e^eta / 2)``.

    Args:
        n: Horizon ``N``.
        eta: Strip parameter, ``N~`` is ``e^-eta N`` up to rounding.

    Returns:
        Strips covering ``N_eff = 2 M N~ <= N``, all later computations run up to ``N_eff``.

    Raises:
        DomainException: If ``eta < log 2``.
        StripsTooThinException: If ``N~ < 4``.

    """
    if not math.isfinite(eta) or eta < math.log(2):
        raise DomainException(f"Strip parameter eta must be at least log 2, got {eta}")
    # the tolerance keeps eta = log 2 at M = 1
    m = math.ceil(math.exp(eta) / 2 - 1e-12)
    n_tilde = n // (2 * m)
    if n_tilde < _MIN_STRIP_WIDTH:
        raise StripsTooThinException(
            f"Strips too thin: N={n} and eta={eta} give strips of width {n_tilde} < {_MIN_STRIP_WIDTH}"
        )
    strips = StripDecomposition(n, 2 * m * n_tilde, n_tilde, eta, m)
    if strips.n_effective < n:
        logger.info(f"Strip decomposition uses N_eff={strips.n_effective} of N={n} (M={m}, N~={n_tilde})")
    return strips


def eta_rule(theta: float) -> float:
    """Default strip parameter ``eta = theta / 3``, never below ``log 2``."""
    return max(theta / 3, math.log(2))
