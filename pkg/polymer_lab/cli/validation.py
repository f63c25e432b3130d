from typing import Optional

import click
from polymer_lab.experiments import (
    Experiment,
    experiment_names,
    get_experiment,
)


def validate_experiment_name(ctx: click.Context, param: click.Parameter, value: str) -> Experiment:
    """Validate the experiment name CLI argument, unknown names exit with a usage error listing the catalog."""
    try:
        return get_experiment(value)
    except KeyError:
        raise click.BadParameter(f"Unknown experiment '{value}', expected one of: " + ", ".join(experiment_names()))


def validate_seed(ctx: click.Context, param: click.Parameter, value: Optional[int]) -> Optional[int]:
    """Validate seed CLI parameter."""
    if value is None or value >= 0:
        return value
    raise click.BadParameter("seed needs to be a non-negative integer")
