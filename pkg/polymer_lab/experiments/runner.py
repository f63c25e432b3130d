import logging
from pathlib import Path
from typing import (
    Any,
    Dict,
    List,
    Optional,
)

from polymer_lab.estimators import check_fields
from polymer_lab.services import (
    ArtifactOutput,
    ParallelContext,
    reset_logging_context,
    set_logging_context,
)

from .catalog import Experiment
from .config import ExperimentConfig
from .plot import gnuplot_script
from .result import ExperimentResult

logger = logging.getLogger("run")


def summary_document(experiment: Experiment, config: ExperimentConfig, result: ExperimentResult) -> Dict[str, Any]:
    """JSON summary of a run: provenance, the resolved configuration, the declared checks and the driver summary."""
    return {
        **result.summary,
        "name": experiment.name,
        "statement": experiment.statement,
        "config": config.listing(),
        **config.provenance(),
        "seed": config.seed,
        "checks": check_fields(result.checks),
        "passed": not result.failed,
    }


def write_artifacts(
    experiment: Experiment, config: ExperimentConfig, result: ExperimentResult, artifact_output: ArtifactOutput
) -> List[Path]:
    """Store ``{name}.csv``, ``{name}.json``, ``{name}.plot`` and, for sampled estimates, ``{name}_blocks.csv``."""
    name = experiment.name
    provenance = config.provenance()
    paths = [
        artifact_output.store_table(artifact_output.artifact_path(name, "csv"), result.table, provenance),
        artifact_output.store_summary(
            artifact_output.artifact_path(name, "json"), summary_document(experiment, config, result)
        ),
    ]

    header = "".join(f"# {key}={provenance[key]}\n" for key in sorted(provenance))
    script = header + gnuplot_script(name, result.plot, result.table)
    paths.append(artifact_output.store_script(artifact_output.artifact_path(name, "plot"), script))

    if result.blocks is not None and not result.blocks.empty:
        blocks_path = artifact_output.artifact_path(f"{name}_blocks", "csv")
        paths.append(artifact_output.store_table(blocks_path, result.blocks, provenance))
    return paths


def run_experiment(
    experiment: Experiment,
    config: ExperimentConfig,
    artifact_output: ArtifactOutput,
    parallel: Optional[ParallelContext] = None,
) -> ExperimentResult:
    """Run one catalog entry and store its artifacts.

    Returns:
        The driver result, whose :attr:`~ExperimentResult.failed` checks decide the exit status.

    """
    set_logging_context(experiment.name)
    try:
        logger.info(f"Running {experiment.name} (config digest {config.digest}, seed {config.seed})")
        result = experiment.driver(config, parallel)
        write_artifacts(experiment, config, result, artifact_output)

        for check in result.checks:
            level = logging.INFO if check.passed else logging.WARNING
            logger.log(level, f"Check '{check.name}': {'pass' if check.passed else 'FAIL'} (margin {check.margin:.3g})")
        logger.info(
            f"Finished {experiment.name}: {len(result.checks) - len(result.failed)} of {len(result.checks)} checks "
            f"passed, artifacts in {artifact_output.output_path}"
        )
        return result
    finally:
        reset_logging_context()
