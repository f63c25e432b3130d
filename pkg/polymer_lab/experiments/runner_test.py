import json
from pathlib import Path

import pytest
from _pytest.tmpdir import TempPathFactory
from polymer_lab.services import (
    ArtifactOutput,
    RuntimeConfig,
)

from .catalog import get_experiment
from .config import (
    ExperimentConfig,
    validate_text,
)
from .runner import run_experiment

KERNELS_CONFIG = "calib.n = 256\ncalib.theta = 1\nrun.seed = 5\n"
DECAY_CONFIG = "calib.n = 16\nsweep.thetas = 0, 1\ncalib.theta = 1\nrun.reps = 64\nrun.seed = 3\n"


def _config(text: str) -> ExperimentConfig:
    config, violations = validate_text(text)
    assert violations == []
    return config


def _output(path: Path) -> ArtifactOutput:
    return ArtifactOutput(RuntimeConfig("run", output_location=str(path), workers=1))


@pytest.fixture(scope="module")  # type: ignore
def output_path(tmp_path_factory: TempPathFactory) -> Path:
    path = tmp_path_factory.mktemp("kernels")
    result = run_experiment(get_experiment("kernels"), _config(KERNELS_CONFIG), _output(path))
    assert result.failed == []
    return path


class TestKernelsRun:
    def test_writes_every_artifact(self, output_path: Path) -> None:
        assert sorted(p.name for p in output_path.iterdir()) == ["kernels.csv", "kernels.json", "kernels.plot"]

    def test_table_has_provenance_and_fixed_header(self, output_path: Path) -> None:
        config = _config(KERNELS_CONFIG)
        lines = (output_path / "kernels.csv").read_text().splitlines()

        assert lines[:4] == [
            f"# artifact_version={config.provenance()['artifact_version']}",
            f"# config_digest={config.digest}",
            "# seed=5",
            "n,u_n,R_n",
        ]
        assert lines[4] == "1,0.25,0.25"
        assert len(lines) == 4 + 256

    def test_summary(self, output_path: Path) -> None:
        summary = json.loads((output_path / "kernels.json").read_text())

        assert summary["name"] == "kernels"
        assert summary["passed"] is True
        assert summary["seed"] == 5
        assert summary["config"]["calib.n"] == "256"
        assert summary["config_digest"] == _config(KERNELS_CONFIG).digest
        assert {check["name"] for check in summary["checks"]} == {
            "closed form matches convolution",
            "overlap constant gap within [0, pi/N]",
        }

    def test_plot_script_reads_the_table(self, output_path: Path) -> None:
        script = (output_path / "kernels.plot").read_text()

        assert script.startswith("# artifact_version=")
        assert 'plot "kernels.csv" using 1:2' in script


def test_sampled_runs_are_reproducible(tmp_path: Path) -> None:
    experiment = get_experiment("decay-vs-theta")
    config = _config(DECAY_CONFIG)

    run_experiment(experiment, config, _output(tmp_path / "first"))
    run_experiment(experiment, config, _output(tmp_path / "second"))

    for name in ["decay-vs-theta.csv", "decay-vs-theta_blocks.csv", "decay-vs-theta.json", "decay-vs-theta.plot"]:
        assert (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()


def test_seed_changes_sampled_tables(tmp_path: Path) -> None:
    experiment = get_experiment("decay-vs-theta")
    config = _config(DECAY_CONFIG)

    run_experiment(experiment, config, _output(tmp_path / "first"))
    run_experiment(experiment, config.with_seed(4), _output(tmp_path / "second"))

    first = (tmp_path / "first" / "decay-vs-theta_blocks.csv").read_text().splitlines()
    second = (tmp_path / "second" / "decay-vs-theta_blocks.csv").read_text().splitlines()
    assert first[3] == second[3] == "quantity,block,mean"
    assert first[4:] != second[4:]
