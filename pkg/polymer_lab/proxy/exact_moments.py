"""Exact second-order moments of the proxy.

Strips do not share cells, so the components are orthogonal and ``Var(X)`` is the sum of the strip variances. With
``m = (j - 1) N~ + i`` the first collision time of two replicas in strip ``j``,

    Var(X_j) = sigma² sum_i u(m) V(N~ - i, K)    and    E~_x[X_j] = sigma² sum_i q_2m(x) V(N~ - i, K),

where ``V(., K)`` is the truncated variance series (the point-to-plane second moment for ``K = None``) and the
size-biased mean is taken under the environment tilted along a walk started at ``x``.
"""
import logging
import math
from typing import (
    List,
    NamedTuple,
    Optional,
    Tuple,
)

import numpy as np
import pandas as pd
from polymer_lab import master_config
from polymer_lab.lattice import (
    kernel_marginal,
    return_masses,
)
from polymer_lab.moments import (
    disc_grid,
    truncated_variance,
)
from polymer_lab.static import (
    ParityException,
    WindowExceededException,
)

from .strips import StripDecomposition

logger = logging.getLogger("proxy")


class ProxyMoments(NamedTuple):
    """Exact variance of the proxy and its size-biased mean on a grid of starting points."""

    variance: float
    strip_variances: np.ndarray
    sites: np.ndarray
    tilted_means: np.ndarray

    @property
    def tilted_inf(self) -> float:
        """Smallest size-biased mean over the grid, an upper bound of the infimum over the disc."""
        return float(self.tilted_means.min())

    @property
    def argmin(self) -> Tuple[int, int]:
        """Grid site realizing :attr:`tilted_inf`."""
        x1, x2 = self.sites[int(np.argmin(self.tilted_means))]
        return int(x1), int(x2)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"x1": self.sites[:, 0], "x2": self.sites[:, 1], "tilted_mean": self.tilted_means})


def tilted_mean_grid(n_tilde: int, max_sites: Optional[int] = None) -> np.ndarray:
    """Even sites of the disc ``|x| <= sqrt(N~)``, see :func:`~polymer_lab.moments.mass.disc_grid`."""
    return disc_grid(math.sqrt(n_tilde), max_sites or master_config.proxy_grid_max_sites)


def _strip_coefficients(
    strips: StripDecomposition, sigma2: float, truncation: Optional[int]
) -> List[Tuple[np.ndarray, np.ndarray]]:
    v = truncated_variance(strips.n_tilde, sigma2, truncation)
    i = np.arange(1, strips.n_tilde + 1)
    coefficients = sigma2 * v[strips.n_tilde - i]
    return [(s + i, coefficients) for s, _ in strips.even_strips()]


def strip_variances(strips: StripDecomposition, sigma2: float, truncation: Optional[int] = None) -> np.ndarray:
    """Return ``Var(X_2), Var(X_4), ..., Var(X_2M)``."""
    u = return_masses(strips.n_effective)
    return np.array([math.fsum(c * u[times]) for times, c in _strip_coefficients(strips, sigma2, truncation)])


def _check_sites(sites: np.ndarray, strips: StripDecomposition) -> None:
    a, b = sites[:, 0] + sites[:, 1], sites[:, 0] - sites[:, 1]
    if np.any(a % 2 != 0):
        raise ParityException("Size-biased means are only defined for even starting sites")
    if np.any(np.maximum(np.abs(a), np.abs(b)) > 2 * strips.n_effective):
        raise WindowExceededException(
            f"Grid sites beyond ℓ¹ radius {2 * strips.n_effective} are never reached "
            f"within N_eff={strips.n_effective}"
        )


def _tilted_mean_table(times: np.ndarray, coefficients: np.ndarray, half_width: int) -> np.ndarray:
    # E~_x = sum_m c_m p_2m(a) p_2m(b) for rotated coordinates (a, b) of x
    marginals = np.array([kernel_marginal(2 * int(m), half_width) for m in times])
    return marginals.T @ (coefficients[:, None] * marginals)


def strip_tilted_means(
    strips: StripDecomposition, sigma2: float, sites: np.ndarray, truncation: Optional[int] = None
) -> np.ndarray:
    """Return ``E~_x[X_2l]`` for every site (rows) and strip (columns).

    Raises:
        ParityException: For an odd site.
        WindowExceededException: For a site out of reach of the walk.

    """
    sites = np.asarray(sites, dtype=np.int64).reshape(-1, 2)
    _check_sites(sites, strips)
    a, b = sites[:, 0] + sites[:, 1], sites[:, 0] - sites[:, 1]
    half_width = int(max(np.abs(a).max(), np.abs(b).max()))
    rows, columns = (a + half_width) // 2, (b + half_width) // 2

    means = np.empty((len(sites), strips.m))
    for ell, (times, coefficients) in enumerate(_strip_coefficients(strips, sigma2, truncation)):
        means[:, ell] = _tilted_mean_table(times, coefficients, half_width)[rows, columns]
    return means


def proxy_exact_moments(
    strips: StripDecomposition,
    sigma2: float,
    truncation: Optional[int] = None,
    sites: Optional[np.ndarray] = None,
) -> ProxyMoments:
    """Return ``Var(X)`` and ``E~_x[X]`` on a grid of starting points.

    Args:
        strips: Strip decomposition.
        sigma2: Pair variance ``sigma²(beta)``.
        truncation: Largest cell-set size ``K``, ``None`` for the untruncated proxy.
        sites: Starting points, defaults to :func:`tilted_mean_grid`.

    """
    sites = tilted_mean_grid(strips.n_tilde) if sites is None else np.asarray(sites, dtype=np.int64).reshape(-1, 2)
    variances = strip_variances(strips, sigma2, truncation)
    means = strip_tilted_means(strips, sigma2, sites, truncation)
    moments = ProxyMoments(math.fsum(variances), variances, sites, means.sum(axis=1))
    logger.info(
        f"Exact proxy moments (N_eff={strips.n_effective}, M={strips.m}, sigma2={sigma2:.6g}): "
        f"Var(X)={moments.variance:.6g}, grid inf of E~[X]={moments.tilted_inf:.6g} at {moments.argmin}"
    )
    return moments
