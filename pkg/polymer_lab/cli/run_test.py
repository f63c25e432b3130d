import logging
import re
from pathlib import Path
from typing import List

import pytest
from _pytest.logging import LogCaptureFixture
from _pytest.monkeypatch import MonkeyPatch
from click.testing import CliRunner
from polymer_lab import master_config
from polymer_lab.__main__ import cli
from polymer_lab.experiments import exact_drivers
from polymer_lab.static import (
    EXIT_CHECKS_FAILED,
    EXIT_INVALID_CONFIG,
    EXIT_UNKNOWN_EXPERIMENT,
    Check,
)

KERNELS_CONFIG = "calib.n = 64\ncalib.theta = 1\n"


def _write(tmp_path: Path, text: str) -> str:
    path = tmp_path / "experiment.cfg"
    path.write_text(text)
    return str(path)


def _table_lines(path: Path) -> List[str]:
    return [line for line in path.read_text().splitlines() if not line.startswith("#")]


class TestRun:
    def test_kernels(self, cli_runner: CliRunner, tmp_path: Path, caplog: LogCaptureFixture) -> None:
        out = tmp_path / "out"

        result = cli_runner.invoke(
            cli, ["run", "kernels", "--config", _write(tmp_path, KERNELS_CONFIG), "--out", str(out)]
        )

        assert result.exit_code == 0
        assert re.search("Successfully ran kernels, all 2 checks passed", result.output)
        assert _table_lines(out / "kernels.csv")[0] == "n,u_n,R_n"
        assert (out / "kernels.json").exists()
        assert (out / "kernels.plot").exists()
        assert f"Runtime config output_path = {out}" in caplog.messages

    def test_seed_option_is_recorded(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "out"

        result = cli_runner.invoke(
            cli, ["run", "kernels", "--config", _write(tmp_path, KERNELS_CONFIG), "--out", str(out), "--seed", "42"]
        )

        assert result.exit_code == 0
        assert "# seed=42" in (out / "kernels.csv").read_text().splitlines()

    def test_output_directory_from_config(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "from_config"

        config = _write(tmp_path, KERNELS_CONFIG + f"run.out = {out}\n")

        result = cli_runner.invoke(cli, ["run", "kernels", "--config", config])

        assert result.exit_code == 0
        assert (out / "kernels.csv").exists()

    def test_default_output_directory(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        result = cli_runner.invoke(cli, ["run", "calibrate", "--config", _write(tmp_path, KERNELS_CONFIG)])

        assert result.exit_code == 0
        assert (Path(master_config.default_output_location) / "calibrate.csv").exists()

    def test_reruns_are_byte_identical(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        config = _write(tmp_path, KERNELS_CONFIG)

        for out in ["first", "second"]:
            result = cli_runner.invoke(cli, ["run", "kernels", "--config", config, "--out", str(tmp_path / out)])
            assert result.exit_code == 0

        for name in ["kernels.csv", "kernels.json", "kernels.plot"]:
            assert (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()

    def test_unknown_experiment(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        result = cli_runner.invoke(cli, ["run", "bogus", "--config", _write(tmp_path, KERNELS_CONFIG)])

        assert result.exit_code == EXIT_UNKNOWN_EXPERIMENT
        assert re.search("Unknown experiment 'bogus', expected one of: kernels, calibrate", result.output)

    def test_invalid_config(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        config = _write(tmp_path, "calib.n = 64\ncalib.theta = 1\ncalib.beta = 0.2\n")

        result = cli_runner.invoke(cli, ["run", "kernels", "--config", config])

        assert result.exit_code == EXIT_INVALID_CONFIG
        assert re.search("exactly one of calib.beta and calib.theta", result.output)

    def test_driver_domain_error(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        config = _write(tmp_path, "calib.n = 64\ncalib.beta = 0\n")

        result = cli_runner.invoke(cli, ["run", "truncated-variance", "--config", config])

        assert result.exit_code == EXIT_INVALID_CONFIG
        assert re.search("truncated-variance cannot run this configuration", result.output)

    def test_failed_check(self, cli_runner: CliRunner, tmp_path: Path, monkeypatch: MonkeyPatch) -> None:
        def failing_check(name: str, deviation: float, tolerance: float) -> Check:
            return Check(name, False, -1.0)

        monkeypatch.setattr(exact_drivers, "_tolerance_check", failing_check)

        result = cli_runner.invoke(cli, ["run", "kernels", "--config", _write(tmp_path, KERNELS_CONFIG)])

        assert result.exit_code == EXIT_CHECKS_FAILED
        assert re.search("1 of 2 checks failed: closed form matches convolution", result.output)

    @pytest.mark.parametrize("seed", ["-1", "abc"])  # type: ignore
    def test_invalid_seed(self, cli_runner: CliRunner, tmp_path: Path, seed: str) -> None:
        config = _write(tmp_path, KERNELS_CONFIG)

        result = cli_runner.invoke(cli, ["run", "kernels", "--config", config, "--seed", seed])

        assert result.exit_code == 2


@pytest.mark.testlogging  # type: ignore
def test_run_logs_checks_in_experiment_context(cli_runner: CliRunner, tmp_path: Path, monkeypatch: MonkeyPatch) -> None:
    monkeypatch.setattr(master_config, "log_level_console", logging.DEBUG)

    result = cli_runner.invoke(
        cli, ["run", "kernels", "--config", _write(tmp_path, KERNELS_CONFIG), "--out", str(tmp_path / "out")]
    )

    assert result.exit_code == 0
    assert re.search("DEBUG::initialize::global::Invoked cli command 'run' with parameters", result.output)
    assert re.search("INFO::run::kernels::Check 'closed form matches convolution': pass", result.output)
    assert re.search("INFO::run::kernels::Finished kernels: 2 of 2 checks passed", result.output)
