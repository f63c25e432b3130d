import numpy as np
import pytest
from polymer_lab.static import (
    DomainException,
    ParityException,
    WindowExceededException,
)

from .mass import (
    MassFunction,
    ball_pieces,
    dirac,
    disc_grid,
    uniform_ball,
)


def test_dirac() -> None:
    f = dirac((2, 1))

    assert f.total == 1.0
    assert f.parity == 1
    assert f.radius == 3
    assert f.as_dict() == {(2, 1): 1.0}


def test_mixed_parity_is_rejected() -> None:
    with pytest.raises(ParityException):
        MassFunction.from_points({(0, 0): 0.5, (1, 0): 0.5})


@pytest.mark.parametrize(  # type: ignore
    "points",
    [{}, {(0, 0): -0.5}, {(0, 0): float("nan")}],
    ids=["empty", "negative", "nan"],
)
def test_invalid_weights_are_rejected(points: dict) -> None:
    with pytest.raises(DomainException):
        MassFunction.from_points(points)


def test_uniform_ball_on_the_even_sublattice() -> None:
    f = uniform_ball(2.0)

    # (0, 0), four sites (+-1, +-1), four sites (+-2, 0) and (0, +-2)
    assert f.sites.shape == (9, 2)
    assert f.is_probability()
    assert f.parity == 0
    assert np.all(np.square(f.sites).sum(axis=1) <= 4)


def test_uniform_ball_on_the_odd_sublattice() -> None:
    f = uniform_ball(1.0, parity=1)

    assert sorted(f.as_dict()) == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_empty_ball_is_rejected() -> None:
    with pytest.raises(DomainException):
        uniform_ball(0.5, parity=1)
    with pytest.raises(DomainException):
        uniform_ball(-1.0)


def test_normalize_and_restrict() -> None:
    f = MassFunction.from_points({(0, 0): 1.0, (1, 1): 3.0})

    normalized = f.normalized()
    assert normalized.is_probability()
    assert normalized.as_dict()[(1, 1)] == 0.75

    kept = f.restrict(lambda sites: sites[:, 0] > 0)
    assert kept.as_dict() == {(1, 1): 3.0}
    with pytest.raises(DomainException):
        f.restrict(lambda sites: sites[:, 0] > 5)


def test_uniform_removes_duplicates() -> None:
    f = MassFunction.uniform([(0, 0), (1, 1), (0, 0)])

    assert f.as_dict() == {(0, 0): 0.5, (1, 1): 0.5}


def test_to_slice() -> None:
    f = MassFunction.from_points({(0, 0): 0.5, (1, 1): 0.25, (-2, 0): 0.25})

    values = f.to_slice(2)

    # rotated coordinates a = x1 + x2, b = x1 - x2 land at index ((a + 2) / 2, (b + 2) / 2)
    assert values.shape == (3, 3)
    assert values[1, 1] == 0.5
    assert values[2, 1] == 0.25
    assert values[0, 0] == 0.25
    assert values.sum() == 1.0


def test_to_slice_errors() -> None:
    f = dirac((1, 1))

    with pytest.raises(ParityException):
        f.to_slice(3)
    with pytest.raises(WindowExceededException):
        f.to_slice(0)


def test_ball_pieces_decompose_the_mass() -> None:
    f = uniform_ball(6.0)

    pieces = list(ball_pieces(f, 3.0))

    assert len(pieces) > 1
    assert sum(alpha for alpha, _ in pieces) == pytest.approx(1.0, abs=1e-14)
    for alpha, g in pieces:
        assert g.is_probability()
        assert np.ptp(np.floor(g.sites / 3.0), axis=0).max() == 0
    recombined = {}
    for alpha, g in pieces:
        for site, weight in g.as_dict().items():
            recombined[site] = alpha * weight
    assert recombined == pytest.approx(f.as_dict(), abs=1e-15)


def test_disc_grid_matches_the_uniform_ball() -> None:
    sites = disc_grid(3.5, parity=1)

    assert set(map(tuple, sites)) == set(uniform_ball(3.5, parity=1).as_dict())
    assert np.all(np.diff(np.square(sites).sum(axis=1)) >= 0)


def test_disc_grid_thinning_keeps_the_centre() -> None:
    sites = disc_grid(8.0, max_sites=25)

    assert len(sites) == 25
    assert tuple(sites[0]) == (0, 0)


def test_empty_disc() -> None:
    with pytest.raises(DomainException):
        disc_grid(0.5, parity=1)
