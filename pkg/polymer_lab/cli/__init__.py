from .list_experiments import list_experiments
from .options import experiment_options
from .run import (
    run,
    run_catalog_experiment,
)
from .validate import validate

__all__ = [
    "list_experiments",
    "experiment_options",
    "run",
    "run_catalog_experiment",
    "validate",
]
