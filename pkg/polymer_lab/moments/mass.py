"""Finitely supported initial conditions on one parity class of the lattice."""
import logging
import math
from dataclasses import dataclass
from typing import (
    Callable,
    Iterable,
    Mapping,
    Optional,
    Tuple,
)

import numpy as np
from polymer_lab.static import (
    DomainException,
    ParityException,
    WindowExceededException,
)

logger = logging.getLogger("moments")

Site = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class MassFunction:
    """Non-negative weights on sites ``x`` with a common parity of ``x1 + x2``.

    ``sites`` is an integer array of shape ``(k, 2)`` without duplicates, ``weights`` the matching array of shape
    ``(k,)``. The odd and the even sublattice never interact under the walk, so every mass function lives on one of
    them.
    """

    sites: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        if self.sites.ndim != 2 or self.sites.shape[1] != 2 or self.sites.shape[0] != self.weights.shape[0]:
            raise DomainException(
                f"Mass function needs sites of shape (k, 2) and k weights, got {self.sites.shape} and "
                f"{self.weights.shape}"
            )
        if self.sites.shape[0] == 0:
            raise DomainException("Mass function needs a non-empty support")
        if np.any(self.weights < 0) or not np.all(np.isfinite(self.weights)):
            raise DomainException("Mass function weights must be finite and non-negative")
        parities = np.unique((self.sites[:, 0] + self.sites[:, 1]) % 2)
        if parities.size != 1:
            raise ParityException("Mass function support mixes both parity classes of the lattice")

    @property
    def total(self) -> float:
        """Total mass ``sum_x f(x)``."""
        return float(math.fsum(self.weights))

    @property
    def parity(self) -> int:
        """Common parity of ``x1 + x2`` over the support."""
        return int((self.sites[0, 0] + self.sites[0, 1]) % 2)

    @property
    def radius(self) -> int:
        """Support radius in the ℓ¹ norm, the quantity bounding the reachable cone."""
        return int(np.max(np.abs(self.sites).sum(axis=1)))

    def is_probability(self, tolerance: float = 1e-12) -> bool:
        """Return ``True`` if the total mass is one up to ``tolerance``."""
        return abs(self.total - 1.0) <= tolerance

    def normalized(self) -> "MassFunction":
        """Return the probability mass function proportional to ``self``."""
        total = self.total
        if total <= 0:
            raise DomainException("Cannot normalize a mass function of zero total mass")
        return MassFunction(self.sites, self.weights / total)

    def restrict(self, predicate: Callable[[np.ndarray], np.ndarray]) -> "MassFunction":
        """Keep the sites where ``predicate(sites)`` is true, weights are not renormalized.

        Raises:
            DomainException: If no site is kept.

        """
        keep = np.asarray(predicate(self.sites), dtype=bool)
        return MassFunction(self.sites[keep], self.weights[keep])

    def to_slice(self, half_width: int) -> np.ndarray:
        """Place the weights on a rotated slice of the given half-width, see :mod:`polymer_lab.lattice.geometry`.

        Raises:
            ParityException: If the slice parity differs from the support parity.
            WindowExceededException: If the support does not fit into the slice.

        """
        if (half_width - self.parity) % 2 != 0:
            raise ParityException(
                f"Mass function of parity {self.parity} cannot be placed on a slice of half-width {half_width}"
            )
        if self.radius > half_width:
            raise WindowExceededException(
                f"Mass function of ℓ¹ radius {self.radius} does not fit into a slice of half-width {half_width}"
            )
        a = self.sites[:, 0] + self.sites[:, 1]
        b = self.sites[:, 0] - self.sites[:, 1]
        values = np.zeros((half_width + 1, half_width + 1))
        np.add.at(values, ((a + half_width) // 2, (b + half_width) // 2), self.weights)
        return values

    def as_dict(self) -> Mapping[Site, float]:
        """Return ``{(x1, x2): weight}``."""
        return {(int(x1), int(x2)): float(w) for (x1, x2), w in zip(self.sites, self.weights)}

    @staticmethod
    def from_points(points: Mapping[Site, float]) -> "MassFunction":
        """Build a mass function from a mapping of sites to weights."""
        sites = np.array(list(points.keys()), dtype=np.int64).reshape(-1, 2)
        weights = np.array(list(points.values()), dtype=float)
        return MassFunction(sites, weights)

    @staticmethod
    def uniform(sites: Iterable[Site]) -> "MassFunction":
        """Uniform probability on a finite set of sites of one parity."""
        unique_sites = sorted(set((int(x1), int(x2)) for x1, x2 in sites))
        if not unique_sites:
            raise DomainException("Uniform mass function needs at least one site")
        return MassFunction(np.array(unique_sites, dtype=np.int64), np.full(len(unique_sites), 1 / len(unique_sites)))


def dirac(x: Site = (0, 0)) -> MassFunction:
    """Unit mass at ``x``."""
    return MassFunction(np.array([x], dtype=np.int64), np.ones(1))


def uniform_ball(radius: float, parity: int = 0) -> MassFunction:
    """Uniform probability on the sites ``|x|_2 <= radius`` of the given parity class.

    Raises:
        DomainException: If the ball holds no site of that parity.

    """
    if radius < 0 or not math.isfinite(radius):
        raise DomainException(f"Ball radius must be finite and non-negative, got {radius}")
    reach = int(math.floor(radius))
    axis = np.arange(-reach, reach + 1)
    x1, x2 = np.meshgrid(axis, axis, indexing="ij")
    inside = (x1 * x1 + x2 * x2 <= radius * radius) & ((x1 + x2) % 2 == parity)
    if not np.any(inside):
        raise DomainException(f"The ball of radius {radius} holds no site of parity {parity}")
    sites = np.stack([x1[inside], x2[inside]], axis=1).astype(np.int64)
    return MassFunction(sites, np.full(sites.shape[0], 1 / sites.shape[0]))


def ball_pieces(f: MassFunction, radius: float) -> Iterable[Tuple[float, MassFunction]]:
    """Decompose ``f`` over a partition of the plane into squares of side ``radius``.

    Yields:
        Pairs ``(alpha_i, g_i)`` with ``alpha_i`` the mass of ``f`` in square ``i`` and ``g_i`` the conditioned law, so
        that ``f = sum_i alpha_i g_i``.

    """
    if radius <= 0:
        raise DomainException(f"Square side must be positive, got {radius}")
    cells = np.floor(f.sites / radius).astype(np.int64)
    for cell in np.unique(cells, axis=0):
        piece = np.all(cells == cell, axis=1)
        alpha = float(math.fsum(f.weights[piece]))
        if alpha > 0:
            yield alpha, MassFunction(f.sites[piece], f.weights[piece] / alpha)


def disc_grid(radius: float, max_sites: Optional[int] = None, parity: int = 0) -> np.ndarray:
    """Sites of one parity class in the disc ``|x|_2 <= radius``, ordered by distance to the origin then angle.

    Larger grids are thinned to ``max_sites`` evenly spaced entries of that order, so the innermost site is always
    kept.

    Returns:
        Integer array of shape ``(k, 2)``.

    Raises:
        DomainException: If the disc holds no site of that parity.

    """
    reach = int(math.floor(radius))
    x1, x2 = np.meshgrid(np.arange(-reach, reach + 1), np.arange(-reach, reach + 1), indexing="ij")
    x1, x2 = x1.ravel(), x2.ravel()
    selected = ((x1 + x2) % 2 == parity) & (x1 ** 2 + x2 ** 2 <= radius * radius + 1e-9)
    if not np.any(selected):
        raise DomainException(f"The disc of radius {radius} holds no site of parity {parity}")
    x1, x2 = x1[selected], x2[selected]
    order = np.lexsort((np.arctan2(x2, x1), x1 ** 2 + x2 ** 2))
    sites = np.stack([x1[order], x2[order]], axis=1).astype(np.int64)
    if max_sites is not None and len(sites) > max_sites:
        keep = np.unique(np.round(np.linspace(0, len(sites) - 1, max_sites)).astype(np.int64))
        logger.info(f"Thinned the grid of the disc of radius {radius:.6g} from {len(sites)} to {len(keep)} sites")
        sites = sites[keep]
    return sites
