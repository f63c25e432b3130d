from functools import wraps
from typing import (
    Any,
    Callable,
    TypeVar,
    cast,
)

import click

from .validation import validate_seed

# Generic to preserve original function signature
# see https://mypy.readthedocs.io/en/stable/generics.html#decorator-factories
F = TypeVar("F", bound=Callable[..., None])


def experiment_options(include_run_options: bool = True) -> Callable[[F], F]:
    """Decorate an experiment command to add CLI options.

    Args:
        include_run_options: Add ``--seed`` and ``--out`` next to ``--config``.

    Returns:
        A decorator method to add experiment options.

    """
    options = [
        click.option(
            "--config",
            "config_path",
            required=True,
            type=click.Path(exists=True, dir_okay=False),
            help="Experiment configuration file with 'key = value' lines.",
        ),
    ]
    if include_run_options:
        options += [
            click.option(
                "--seed",
                type=int,
                callback=validate_seed,
                default=None,
                help="Master seed overriding run.seed of the configuration.",
            ),
            click.option(
                "--out",
                "output_location",
                type=click.Path(file_okay=False),
                default=None,
                help="Directory used to store resulting files, overrides run.out of the configuration.",
            ),
        ]

    def decorator(function: F) -> F:
        for option in reversed(options):
            function = option(function)

        @wraps(function)
        def wrapper(*args: Any, **kwargs: Any) -> None:
            function(*args, **kwargs)

        return cast(F, wrapper)

    return decorator
