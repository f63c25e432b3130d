import json
from logging import getLogger
from pathlib import Path
from typing import (
    Any,
    Dict,
    Mapping,
    Tuple,
)

import pandas as pd
from polymer_lab import master_config
from polymer_lab.helpers import absolute_path

from .runtime_config import RuntimeConfig

logger = getLogger("artifact_output")

PROVENANCE_PREFIX = "# "


class ArtifactOutput:
    """Write experiment artifacts (CSV tables, JSON summaries, plot scripts) below the configured output directory.

    Every file carries its provenance: CSV tables as leading ``# key=value`` comment lines, JSON summaries as top-level
    keys. No timestamps are written, so rerunning a configuration reproduces identical files.
    """

    def __init__(self, runtime_config: RuntimeConfig):
        self._runtime_config = runtime_config

    @property
    def output_path(self) -> Path:
        """Absolute output directory of this invocation."""
        return absolute_path(self._runtime_config.output_path)

    def artifact_path(self, name: str, extension: str) -> Path:
        """Return ``<output directory>/<name>.<extension>``."""
        return ArtifactOutput._change_file_extension(self.output_path / name, extension)

    def store_table(self, path: Path, df: pd.DataFrame, provenance: Mapping[str, Any]) -> Path:
        """Save a :class:`pandas.DataFrame` as CSV with provenance header lines.

        Args:
            path: Complete file path, intermediate directories will be created if not existing.
            df: Table to save, the index is not written.
            provenance: Key/value pairs written as comment lines above the header.

        Returns:
            Path were the table is stored.

        Raises:
            AttributeError: If path is an existing directory.

        """
        assert path.is_absolute(), f"Expected path to be absolute: {path}"
        ArtifactOutput._ensure_is_file_in_existing_directory(path)
        path = ArtifactOutput._change_file_extension(path, "csv")

        with path.open("w", encoding="utf-8", newline="") as file:
            for key in sorted(provenance):
                file.write(f"{PROVENANCE_PREFIX}{key}={provenance[key]}\n")
            df.to_csv(file, index=False, float_format=master_config.csv_float_format, lineterminator="\n")

        logger.debug(f'Created "{path}"')
        return path

    def store_summary(self, path: Path, summary: Mapping[str, Any]) -> Path:
        """Save a JSON summary.

        Args:
            path: Complete file path, intermediate directories will be created if not existing.
            summary: JSON-serializable mapping.

        Returns:
            Path were the summary is stored.

        Raises:
            AttributeError: If path is an existing directory.

        """
        path = ArtifactOutput._change_file_extension(path, "json")
        ArtifactOutput._ensure_is_file_in_existing_directory(path)

        with path.open("w", encoding="utf-8") as file:
            json.dump(summary, file, indent=4, sort_keys=True, allow_nan=True)
            file.write("\n")

        logger.info(f"Stored summary in {path}")
        return path

    def store_script(self, path: Path, text: str) -> Path:
        """Save a plain text script (e.g. a gnuplot command file)."""
        ArtifactOutput._ensure_is_file_in_existing_directory(path)
        path.write_text(text, encoding="utf-8")
        logger.debug(f'Created "{path}"')
        return path

    @staticmethod
    def load_table(path: Path) -> Tuple[pd.DataFrame, Dict[str, str]]:
        """Read a table written by :meth:`store_table`.

        Returns:
            The table and its provenance key/value pairs.

        """
        provenance: Dict[str, str] = {}
        with path.open(encoding="utf-8") as file:
            for line in file:
                if not line.startswith(PROVENANCE_PREFIX):
                    break
                key, _, value = line[len(PROVENANCE_PREFIX) :].rstrip("\n").partition("=")
                provenance[key] = value

        return pd.read_csv(path, comment="#", float_precision="round_trip"), provenance

    @staticmethod
    def _ensure_is_file_in_existing_directory(path: Path) -> None:
        if path.is_dir():
            raise AttributeError(f"Path for saving is an existing directory! ({absolute_path(path)})")
        path.parent.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def _change_file_extension(path: Path, new_extension: str) -> Path:
        return path.with_suffix(f".{new_extension}")
