import numpy as np
import pytest
from polymer_lab.disorder import (
    GaussianDisorder,
    RademacherDisorder,
)
from polymer_lab.lattice import crop
from polymer_lab.static import (
    DomainException,
    FieldTooLargeException,
    ParityException,
    WindowExceededException,
)

from .field import (
    cone_half_widths,
    default_cone_truncation,
    field_memory_estimate,
    sample_field,
)


@pytest.mark.parametrize(  # type: ignore
    "horizon, radius, parity, truncation, expected",
    [
        (3, 0, 0, None, [0, 1, 2, 3]),
        (3, 1, 0, None, [0, 1, 2, 3]),
        (3, 1, 1, None, [1, 2, 3, 4]),
        (3, 4, 0, None, [4, 5, 6, 7]),
        (5, 0, 0, 2, [0, 1, 2, 1, 2, 1]),
    ],
)
def test_cone_half_widths(horizon: int, radius: int, parity: int, truncation: int, expected: list) -> None:
    assert cone_half_widths(horizon, radius, parity, truncation) == expected


def test_cone_half_widths_reject_empty_cones() -> None:
    with pytest.raises(DomainException):
        cone_half_widths(3, 0, 1)
    with pytest.raises(DomainException):
        cone_half_widths(3, 2, 0, truncation=2)


def test_memory_estimate_counts_every_cell() -> None:
    assert field_memory_estimate(2, 0) == 8 * (4 + 9)


def test_same_seed_gives_identical_fields() -> None:
    first = sample_field(GaussianDisorder(), 12, seed=7, replica=3)
    second = sample_field(GaussianDisorder(), 12, seed=7, replica=3)

    for a, b in zip(first.slices, second.slices):
        np.testing.assert_array_equal(a, b)


def test_replicas_are_different() -> None:
    first = sample_field(GaussianDisorder(), 4, seed=7, replica=0)
    second = sample_field(GaussianDisorder(), 4, seed=7, replica=1)

    assert not np.array_equal(first.values(4), second.values(4))


def test_cell_values_do_not_depend_on_radius_or_truncation() -> None:
    full = sample_field(GaussianDisorder(), 20, seed=3, radius=4)
    narrow = sample_field(GaussianDisorder(), 20, seed=3)
    truncated = sample_field(GaussianDisorder(), 20, seed=3, truncation=9)

    for n in range(1, 21):
        np.testing.assert_array_equal(narrow.values(n), crop(full.values(n), n + 4, n))
        width = truncated.half_width(n)
        np.testing.assert_array_equal(truncated.values(n), crop(narrow.values(n), n, width))


def test_gaussian_cells_are_centred_with_unit_variance() -> None:
    # sum_{k=2..144} k² is just above one million cells
    field = sample_field(GaussianDisorder(), 143, seed=11)
    values = np.concatenate([values.ravel() for values in field.slices])

    assert values.size > 1_000_000
    assert abs(values.mean()) <= 4e-3
    assert abs(values.var() - 1.0) <= 1e-2


def test_memory_cap_is_enforced() -> None:
    with pytest.raises(FieldTooLargeException, match="MiB"):
        sample_field(GaussianDisorder(), 100, seed=1, memory_cap_bytes=1000)


def test_value_lookup_and_errors() -> None:
    field = sample_field(RademacherDisorder(), 3, seed=5)

    assert field.value(2, (1, 1)) in (-1.0, 1.0)
    with pytest.raises(ParityException):
        field.value(2, (1, 0))
    with pytest.raises(WindowExceededException):
        field.value(2, (3, 1))
    with pytest.raises(DomainException):
        field.value(4, (0, 0))


def test_with_cells_replaces_values_and_keeps_the_original() -> None:
    field = sample_field(GaussianDisorder(), 3, seed=5)
    before = field.value(2, (0, 0))

    changed = field.with_cells({(2, 0, 0): 42.0})

    assert changed.value(2, (0, 0)) == 42.0
    assert field.value(2, (0, 0)) == before
    assert changed.values(1) is field.values(1)


def test_snapshot_export() -> None:
    field = sample_field(GaussianDisorder(), 2, seed=5)

    df = field.to_frame()

    assert list(df.columns) == ["n", "x1", "x2", "omega"]
    assert len(df) == 4 + 9
    row = df[(df["n"] == 2) & (df["x1"] == 1) & (df["x2"] == -1)]
    assert row["omega"].iloc[0] == field.value(2, (1, -1))


def test_snapshot_export_is_limited_to_tiny_fields() -> None:
    with pytest.raises(DomainException, match="exported"):
        sample_field(GaussianDisorder(), 9, seed=5).to_frame()


def test_horizon_must_be_positive() -> None:
    with pytest.raises(DomainException):
        sample_field(GaussianDisorder(), 0, seed=5)


def test_default_cone_truncation() -> None:
    assert default_cone_truncation(512) is None
    # 3 * sqrt(1024 log 1024) = 252.7
    assert default_cone_truncation(1024) == 253
    assert default_cone_truncation(1024, radius=32) == 285
