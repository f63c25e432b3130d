import logging
from contextlib import contextmanager
from typing import (
    Iterator,
    NamedTuple,
    Optional,
)

import click

from .artifact_output import ArtifactOutput
from .logging import (
    initialize_logging,
    reset_logging_context,
)
from .multiprocessing import initialize_multiprocessing
from .replica_executor import ParallelContext
from .runtime_config import RuntimeConfig
from .signal_handler import initialize_faulthandler
from .warnings import initialize_warnings

logger = logging.getLogger("initialize")


class Services(NamedTuple):
    """Provide references to the currently valid services for this run."""

    runtime_config: RuntimeConfig  #: Current :py:class:`RuntimeConfig` instance
    artifact_output: ArtifactOutput  #: Current :py:class:`ArtifactOutput` instance
    parallel: ParallelContext  #: Worker pool settings handed to the estimators


@contextmanager
def initialize(
    command_name: str, output_location: Optional[str] = None, seed: Optional[int] = None,
) -> Iterator[Services]:
    """Initialize and provide :class:`Services` context.

    Args:
        command_name: Fallback name of the command when not invoked through click.
        output_location: Directory for artifacts, defaults to
            :data:`~polymer_lab.master_config.default_output_location`.
        seed: Master seed overriding the experiment configuration.

    Returns:
        Initialized services, valid within the :func:`~contextlib.contextmanager`.

    """
    initialize_faulthandler()
    initialize_warnings()

    multiprocessing_context = initialize_multiprocessing()
    log_queue = multiprocessing_context.Queue(-1)

    click_context = click.get_current_context(silent=True)
    if click_context:
        command_name = str(click_context.info_name)

    logging_cleanup = initialize_logging(command_name, log_queue)

    if click_context:
        logger.debug(f"Invoked cli command '{click_context.info_name}' with parameters {click_context.params}")

    runtime_config = RuntimeConfig(command_name, output_location=output_location, seed=seed)
    artifact_output = ArtifactOutput(runtime_config)
    parallel = ParallelContext(multiprocessing_context, log_queue, runtime_config.workers)

    logger.debug("Services initialized successfully")

    try:
        yield Services(runtime_config, artifact_output, parallel)
    finally:
        reset_logging_context()
        logging_cleanup()
        log_queue.close()
