import logging
import sys
from pathlib import Path
from typing import Optional

import click
from polymer_lab.experiments import (
    Experiment,
    load_config,
    run_experiment,
)
from polymer_lab.services import initialize
from polymer_lab.static import (
    EXIT_CHECKS_FAILED,
    EXIT_INTERRUPTED,
    EXIT_INVALID_CONFIG,
    CalibrationRangeException,
    ConfigurationException,
    DomainException,
    FieldTooLargeException,
    ProxyEventUndefinedException,
    StripsTooThinException,
    WindowExceededException,
)

from .options import experiment_options
from .validation import validate_experiment_name

logger = logging.getLogger("run")

# Raised by drivers when configured values are valid on their own but unusable for the experiment.
UNUSABLE_CONFIGURATION = (
    CalibrationRangeException,
    DomainException,
    FieldTooLargeException,
    ProxyEventUndefinedException,
    StripsTooThinException,
    WindowExceededException,
)


@click.command()
@click.argument("experiment", metavar="NAME", callback=validate_experiment_name)
@experiment_options()
def run(experiment: Experiment, config_path: str, seed: Optional[int], output_location: Optional[str]) -> None:
    """Run experiment NAME of the catalog and write its CSV, JSON and plot artifacts."""
    run_catalog_experiment(experiment, Path(config_path), seed=seed, output_location=output_location)


def run_catalog_experiment(
    experiment: Experiment,
    config_path: Path,
    seed: Optional[int] = None,
    output_location: Optional[str] = None,
) -> None:
    """Run one catalog entry and exit with the status of its declared checks.

    Args:
        experiment: Catalog entry to run.
        config_path: Experiment configuration file.
        seed: Master seed overriding ``run.seed``.
        output_location: Artifact directory overriding ``run.out``.

    """
    try:
        config = load_config(config_path).with_seed(seed)
        with initialize(
            "run",
            output_location=output_location if output_location is not None else config["run.out"],
            seed=config.seed,
        ) as services:
            services.runtime_config.log_config()
            result = run_experiment(experiment, config, services.artifact_output, services.parallel)
            output_path = services.artifact_output.output_path

    except KeyboardInterrupt:
        logger.error("Exiting because user terminated the process.")
        click.echo(click.style("Exiting because user terminated the process.", fg="red"), err=True)
        sys.exit(EXIT_INTERRUPTED)
    except ConfigurationException as e:
        click.echo(click.style(f"Exiting because of configuration error: {e}", fg="red"), err=True)
        sys.exit(EXIT_INVALID_CONFIG)
    except UNUSABLE_CONFIGURATION as e:
        logger.error(f"Configuration error: {e}")
        message = f"Exiting because {experiment.name} cannot run this configuration: {e}"
        click.echo(click.style(message, fg="red"), err=True)
        sys.exit(EXIT_INVALID_CONFIG)

    if result.failed:
        failed = ", ".join(check.name for check in result.failed)
        click.echo(
            click.style(f"{len(result.failed)} of {len(result.checks)} checks failed: {failed}", fg="red"), err=True
        )
        sys.exit(EXIT_CHECKS_FAILED)

    click.echo(
        click.style(
            f"Successfully ran {experiment.name}, all {len(result.checks)} checks passed. Artifacts in {output_path}",
            fg="green",
        )
    )
