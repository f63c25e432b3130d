"""Rational-arithmetic twins of the moment recursions, used as oracles for the floating point versions."""
from fractions import Fraction
from itertools import combinations
from typing import (
    List,
    Mapping,
    Optional,
    Tuple,
)

from polymer_lab.lattice import (
    return_mass_exact,
    step_kernel_exact,
)
from polymer_lab.static import DomainException

ExactMass = Mapping[Tuple[int, int], Fraction]


def second_moment_point_exact(n: int, sigma2: Fraction) -> List[Fraction]:
    """Rational ``B(0..n)`` by the renewal recursion."""
    u = [Fraction(1)] + [return_mass_exact(m) for m in range(1, n + 1)]
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(1 + sigma2 * sum((u[j] * b[m - j] for j in range(1, m + 1)), Fraction(0)))
    return b


def collision_kernel_exact(f: ExactMass, g: ExactMass, n_max: int) -> List[Fraction]:
    """Rational ``q_2i(f, g)`` for ``i = 0..n_max``."""
    values = []
    for i in range(n_max + 1):
        values.append(
            sum(
                (
                    wf * wg * step_kernel_exact(2 * i, (y[0] - x[0], y[1] - x[1]))
                    for x, wf in f.items()
                    for y, wg in g.items()
                ),
                Fraction(0),
            )
        )
    return values


def second_moment_field_exact(n: int, sigma2: Fraction, f: ExactMass) -> Fraction:
    """Rational ``E[Z_N(f)²] = (sum f)² + sigma² sum_i q_2i(f, f) B(N - i)``."""
    b = second_moment_point_exact(n, sigma2)
    q = collision_kernel_exact(f, f, n)
    total = sum(f.values(), Fraction(0))
    return total * total + sigma2 * sum((q[i] * b[n - i] for i in range(1, n + 1)), Fraction(0))


def truncated_variance_exact(n: int, sigma2: Fraction, truncation: Optional[int]) -> List[Fraction]:
    """Rational ``V(0..n, K)`` by direct enumeration of the subsets of ``1..m`` with fewer than ``K`` points.

    Exponential in ``n``, meant for horizons up to about 12.
    """
    if truncation is not None and truncation < 1:
        raise DomainException(f"Chaos truncation must be at least 1, got {truncation}")
    values = []
    for m in range(n + 1):
        top = m if truncation is None else min(truncation - 1, m)
        total = Fraction(0)
        for k in range(top + 1):
            for subset in combinations(range(1, m + 1), k):
                total += sigma2 ** k * _subset_mass(subset)
        values.append(total)
    return values


def _subset_mass(subset: Tuple[int, ...]) -> Fraction:
    mass, previous = Fraction(1), 0
    for point in subset:
        mass *= return_mass_exact(point - previous)
        previous = point
    return mass


def hat_moment_exact(n: int, sigma2: Fraction, truncation: Optional[int], f: ExactMass, g: ExactMass) -> Fraction:
    """Rational ``sigma² sum_{i=1..n} q_2i(f, g) V(n - i, K)``."""
    v = truncated_variance_exact(n, sigma2, truncation)
    q = collision_kernel_exact(f, g, n)
    return sigma2 * sum((q[i] * v[n - i] for i in range(1, n + 1)), Fraction(0))
