import pytest

from .catalog import (
    CATALOG,
    experiment_names,
    get_experiment,
)


def test_catalog_order() -> None:
    assert experiment_names() == [
        "kernels",
        "calibrate",
        "decay-vs-theta",
        "second-moment",
        "truncated-variance",
        "proxy-report",
        "stretches",
        "free-energy",
        "finite-volume",
        "skeleton-q",
        "tv-identity",
        "appendix-b",
    ]


def test_every_entry_is_described() -> None:
    assert len(CATALOG) == 12
    assert all(experiment.description and experiment.statement for experiment in CATALOG)
    assert all(callable(experiment.driver) for experiment in CATALOG)


def test_lookup() -> None:
    assert get_experiment("skeleton-q").name == "skeleton-q"


def test_unknown_name_lists_the_catalog() -> None:
    with pytest.raises(KeyError, match="Unknown experiment 'bogus', expected one of: kernels, calibrate"):
        get_experiment("bogus")
