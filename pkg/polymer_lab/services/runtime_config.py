import logging
import os
from pathlib import Path
from typing import Optional

from polymer_lab import master_config
from polymer_lab.static import (
    WORKERS_ENVIRONMENT_VARIABLE,
    ConfigurationException,
)

logger = logging.getLogger("runtime_config")


class RuntimeConfig:
    """Combination of :mod:`~polymer_lab.master_config`, CLI options and the environment for one invocation.

    Experiment-specific keys live in :class:`~polymer_lab.experiments.ExperimentConfig`; this class only holds what
    every command shares.
    """

    def __init__(
        self,
        command_name: str,
        output_location: Optional[str] = None,
        seed: Optional[int] = None,
        workers: Optional[int] = None,
    ):
        self.command_name = command_name

        self.output_path = Path(output_location or master_config.default_output_location)

        self.seed = seed

        self.workers = workers if workers is not None else RuntimeConfig._workers_from_environment()

    @staticmethod
    def _workers_from_environment() -> int:
        value = os.environ.get(WORKERS_ENVIRONMENT_VARIABLE)
        if value is None or value.strip() == "":
            return master_config.max_parallel_workers
        try:
            workers = int(value)
        except ValueError:
            raise ConfigurationException(f"{WORKERS_ENVIRONMENT_VARIABLE} must be an integer, got {value!r}")
        if workers < 1:
            raise ConfigurationException(f"{WORKERS_ENVIRONMENT_VARIABLE} must be at least 1, got {workers}")
        return workers

    def log_config(self) -> None:
        """Log current runtime configuration."""
        for k, v in self.__dict__.items():
            logger.info(f"Runtime config {k} = {v}")
