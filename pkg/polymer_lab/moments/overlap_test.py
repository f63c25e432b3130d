from fractions import Fraction

import numpy as np
import pytest
from polymer_lab.lattice import (
    build_kernel_table,
    overlap_sum,
    return_masses,
)
from polymer_lab.static import (
    ParityException,
    WindowExceededException,
)

from .exact import collision_kernel_exact
from .mass import (
    MassFunction,
    dirac,
)
from .overlap import (
    collision_kernel,
    difference_mass,
    green_weighted,
)

F_EXACT = {(0, 0): Fraction(1, 2), (1, 1): Fraction(1, 3), (-2, 0): Fraction(1, 6)}
G_EXACT = {(0, 2): Fraction(3, 4), (1, -1): Fraction(1, 4)}


def _to_float(exact: dict) -> MassFunction:
    return MassFunction.from_points({site: float(weight) for site, weight in exact.items()})


def test_difference_mass_of_diracs() -> None:
    differences = difference_mass(dirac((1, 1)), dirac((-1, 1)))

    assert differences.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.count_nonzero(differences > 1e-12) == 1


def test_difference_mass_needs_a_common_parity() -> None:
    with pytest.raises(ParityException):
        difference_mass(dirac(), dirac((1, 0)))


def test_collision_kernel_against_rational_arithmetic() -> None:
    values = collision_kernel(_to_float(F_EXACT), _to_float(G_EXACT), 8)
    expected = [float(value) for value in collision_kernel_exact(F_EXACT, G_EXACT, 8)]

    np.testing.assert_allclose(values, expected, rtol=1e-12, atol=1e-15)


def test_collision_kernel_at_time_zero_is_the_overlap_of_supports() -> None:
    f = _to_float(F_EXACT)
    g = MassFunction.from_points({(0, 0): 0.25, (1, 1): 0.75})

    assert collision_kernel(f, g, 0)[0] == pytest.approx(0.5 * 0.25 + 1 / 3 * 0.75, rel=1e-14)


def test_point_kernels_are_return_masses() -> None:
    values = collision_kernel(dirac(), dirac(), 1500)

    np.testing.assert_allclose(values, return_masses(1500), rtol=1e-9)
    assert green_weighted(1500, dirac(), dirac()) == pytest.approx(overlap_sum(1500).r_n, rel=1e-9)


def test_windowed_table_matches_the_light_cone() -> None:
    f, g = _to_float(F_EXACT), _to_float(G_EXACT)
    table = build_kernel_table(8, window_radius=12, window_times=range(2, 17, 2))

    np.testing.assert_allclose(collision_kernel(f, g, 8, table), collision_kernel(f, g, 8), rtol=1e-12, atol=1e-15)


def test_windowed_table_must_hold_every_time() -> None:
    table = build_kernel_table(8, window_radius=12, window_times=[2, 4])

    with pytest.raises(WindowExceededException, match="rebuild"):
        collision_kernel(dirac(), dirac(), 3, table)


def test_windowed_table_must_cover_the_supports() -> None:
    table = build_kernel_table(8, window_radius=2, window_times=range(2, 17, 2))
    f = MassFunction.from_points({(3, 1): 0.5, (-3, -1): 0.5})

    with pytest.raises(WindowExceededException):
        collision_kernel(f, f, 8, table)
