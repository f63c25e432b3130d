from .catalog import (
    CATALOG,
    Experiment,
    experiment_names,
    get_experiment,
)
from .config import (
    SCHEMA,
    ConfigKey,
    ExperimentConfig,
    load_config,
    validate_text,
)
from .plot import (
    PlotSpec,
    Series,
    gnuplot_script,
)
from .result import (
    ExperimentResult,
    blocks_frame,
)
from .runner import (
    run_experiment,
    summary_document,
    write_artifacts,
)

__all__ = [
    "CATALOG",
    "Experiment",
    "experiment_names",
    "get_experiment",
    "SCHEMA",
    "ConfigKey",
    "ExperimentConfig",
    "load_config",
    "validate_text",
    "PlotSpec",
    "Series",
    "gnuplot_script",
    "ExperimentResult",
    "blocks_frame",
    "run_experiment",
    "summary_document",
    "write_artifacts",
]
