import logging
from pathlib import Path

import pytest
from _pytest.logging import LogCaptureFixture
from _pytest.monkeypatch import MonkeyPatch
from polymer_lab import master_config
from polymer_lab.static import (
    WORKERS_ENVIRONMENT_VARIABLE,
    ConfigurationException,
)

from .runtime_config import RuntimeConfig


def test_logs_current_config(caplog: LogCaptureFixture) -> None:
    runtime_config = RuntimeConfig("run", output_location="test", seed=7, workers=2)

    with caplog.at_level(logging.INFO):
        runtime_config.log_config()
        assert caplog.messages == [
            "Runtime config command_name = run",
            "Runtime config output_path = test",
            "Runtime config seed = 7",
            "Runtime config workers = 2",
        ]


def test_output_path_defaults_to_master_config() -> None:
    assert RuntimeConfig("list").output_path == Path(master_config.default_output_location)


@pytest.mark.parametrize(  # type: ignore
    "value, expected", [("", 1), ("1", 1), ("4", 4)], ids=["empty", "one", "four"],
)
def test_workers_are_read_from_environment(monkeypatch: MonkeyPatch, value: str, expected: int) -> None:
    monkeypatch.setenv(WORKERS_ENVIRONMENT_VARIABLE, value)

    assert RuntimeConfig("run").workers == expected


@pytest.mark.parametrize("value", ["zero", "0", "-3"])  # type: ignore
def test_invalid_worker_count_is_a_configuration_error(monkeypatch: MonkeyPatch, value: str) -> None:
    monkeypatch.setenv(WORKERS_ENVIRONMENT_VARIABLE, value)

    with pytest.raises(ConfigurationException, match=WORKERS_ENVIRONMENT_VARIABLE):
        RuntimeConfig("run")
