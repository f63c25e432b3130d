"""Brute-force enumeration oracles over walk paths, disorder configurations and chaos subsets.

Everything here is exponential in the horizon and only meant for toy instances in tests.
"""
import math
from collections import defaultdict
from fractions import Fraction
from itertools import (
    combinations,
    product,
)
from typing import (
    Dict,
    Iterator,
    List,
    Mapping,
    Optional,
    Tuple,
)

import numpy as np
from polymer_lab.engine import DiamondField
from polymer_lab.lattice import return_mass_exact
from polymer_lab.moments import MassFunction

Site = Tuple[int, int]
SpaceTimeCell = Tuple[int, Site]
ExactMass = Mapping[Site, Fraction]

NEIGHBOURS: Tuple[Site, ...] = ((1, 0), (-1, 0), (0, 1), (0, -1))


def subset_return_mass_sum(n: int, k: int) -> float:
    """Return ``sum_{|I| = k, I ⊆ 1..n} u(I)`` with ``u(I) = prod u(i_j - i_{j-1})`` and ``i_0 = 0``."""
    u = [1.0] + [float(return_mass_exact(m)) for m in range(1, n + 1)]
    terms = []
    for subset in combinations(range(1, n + 1), k):
        previous, mass = 0, 1.0
        for point in subset:
            mass *= u[point - previous]
            previous = point
        terms.append(mass)
    return math.fsum(terms)


def walk_paths(horizon: int, start: Site) -> Iterator[Tuple[Site, ...]]:
    """Yield all ``4 ** N`` paths ``S_0 = start, S_1, ..., S_N`` of the simple random walk."""
    for steps in product(NEIGHBOURS, repeat=horizon):
        path = [start]
        for dx1, dx2 in steps:
            path.append((path[-1][0] + dx1, path[-1][1] + dx2))
        yield tuple(path)


def path_partition(field: DiamondField, beta: float, f: MassFunction) -> float:
    """Return ``Z_N(f)`` by summing over every path, the oracle of the transfer matrix."""
    lam = field.model.cumulant(beta)
    terms = []
    for start, mass in f.as_dict().items():
        for path in walk_paths(field.horizon, start):
            energy = sum(beta * field.value(n, path[n]) - lam for n in range(1, field.horizon + 1))
            terms.append(mass * 4.0 ** -field.horizon * math.exp(energy))
    return math.fsum(terms)


def cone_cells(horizon: int, support: List[Site]) -> List[SpaceTimeCell]:
    """Space-time cells ``(n, x)``, ``1 <= n <= N``, reachable from the support."""
    cells: List[SpaceTimeCell] = []
    current = set(support)
    for n in range(1, horizon + 1):
        current = {(x1 + dx1, x2 + dx2) for x1, x2 in current for dx1, dx2 in NEIGHBOURS}
        cells.extend((n, x) for x in sorted(current))
    return cells


def exact_partition(weights: Mapping[SpaceTimeCell, Fraction], f: ExactMass, horizon: int) -> Fraction:
    """Rational ``Z_N(f)`` by a dictionary transfer matrix with the given cell weights."""
    current: Dict[Site, Fraction] = dict(f)
    quarter = Fraction(1, 4)
    for n in range(1, horizon + 1):
        following: Dict[Site, Fraction] = defaultdict(Fraction)
        for (x1, x2), mass in current.items():
            for dx1, dx2 in NEIGHBOURS:
                following[(x1 + dx1, x2 + dx2)] += quarter * mass
        current = {x: mass * weights[(n, x)] for x, mass in following.items()}
    return sum(current.values(), Fraction(0))


def rademacher_moment_exact(horizon: int, tilt: Fraction, f: ExactMass, power: int = 2) -> Fraction:
    """Return ``E[Z_N(f) ** power]`` over every ``+-1`` configuration of the cone.

    With ``t = tanh(beta)`` the normalized weight of a ``+-1`` environment is ``1 + t omega``, so rational ``t`` keeps
    the whole computation exact. The pair variance is ``t²``.
    """
    cells = cone_cells(horizon, list(f))
    total = Fraction(0)
    for signs in product((1, -1), repeat=len(cells)):
        weights = {cell: 1 + tilt * sign for cell, sign in zip(cells, signs)}
        total += exact_partition(weights, f, horizon) ** power
    return total / 2 ** len(cells)


def chaos_coefficients(
    horizon: int, f: ExactMass, k_max: Optional[int] = None
) -> Dict[Tuple[SpaceTimeCell, ...], Fraction]:
    """Return ``c_f(A) = P_f(S visits every cell of A)`` for sets ``A`` of at most ``k_max`` cells with distinct times.

    The empty set is included with ``c_f(()) = sum f``.
    """
    k_max = horizon if k_max is None else k_max
    coefficients: Dict[Tuple[SpaceTimeCell, ...], Fraction] = defaultdict(Fraction)
    path_mass = Fraction(1, 4 ** horizon)
    for start, mass in f.items():
        for path in walk_paths(horizon, start):
            for k in range(min(k_max, horizon) + 1):
                for times in combinations(range(1, horizon + 1), k):
                    coefficients[tuple((n, path[n]) for n in times)] += mass * path_mass
    return coefficients


def chaos_product_exact(
    horizon: int,
    sigma2: Fraction,
    f: ExactMass,
    g: ExactMass,
    k_max: Optional[int] = None,
    include_empty: bool = False,
) -> Fraction:
    """Return ``E[Z^(f) Z^(g)] = sum_A sigma² ** |A| c_f(A) c_g(A)`` over chaos sets ``1 <= |A| <= k_max``.

    ``include_empty`` adds the zeroth chaos, so that ``k_max = None`` gives ``E[Z_N(f) Z_N(g)]``.
    """
    f_coefficients = chaos_coefficients(horizon, f, k_max)
    g_coefficients = chaos_coefficients(horizon, g, k_max)
    total = Fraction(0)
    for cells, coefficient in f_coefficients.items():
        if not cells and not include_empty:
            continue
        total += sigma2 ** len(cells) * coefficient * g_coefficients.get(cells, Fraction(0))
    return total


def to_exact_mass(f: MassFunction, denominator: int = 10 ** 6) -> Dict[Site, Fraction]:
    """Rational copy of a mass function with weights rounded to the given denominator."""
    return {site: Fraction(weight).limit_denominator(denominator) for site, weight in f.as_dict().items()}


def random_mass(rng: np.random.Generator, radius: int, sites: int) -> MassFunction:
    """Random mass function on ``sites`` distinct even sites within ℓ¹ radius ``radius``."""
    axis = np.arange(-radius, radius + 1)
    x1, x2 = np.meshgrid(axis, axis, indexing="ij")
    inside = (np.abs(x1) + np.abs(x2) <= radius) & ((x1 + x2) % 2 == 0)
    candidates = np.stack([x1[inside], x2[inside]], axis=1)
    chosen = candidates[rng.choice(candidates.shape[0], size=min(sites, candidates.shape[0]), replace=False)]
    return MassFunction(chosen.astype(np.int64), rng.random(chosen.shape[0]) + 0.1)
