"""Gnuplot command files for the experiment tables.

Scripts only reference the CSV table of their own experiment, by file name, so an output directory can be moved as a
whole and replotted with ``gnuplot <name>.plot``.
"""
from typing import (
    List,
    NamedTuple,
    Optional,
    Sequence,
)

import pandas as pd


class Series(NamedTuple):
    """One curve: a column against the x column, optionally with a column of error bars."""

    column: str
    title: str
    error_column: Optional[str] = None
    style: str = "linespoints"


class PlotSpec(NamedTuple):
    """Layout of the single panel drawn from an experiment table."""

    x: str
    series: Sequence[Series]
    title: str
    x_label: str
    y_label: str
    log_x: bool = False
    log_y: bool = False
    x_labels_column: Optional[str] = None


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _column_index(columns: List[str], name: str) -> int:
    if name not in columns:
        raise KeyError(f"Plot column {name!r} is not part of the table columns {columns}")
    return columns.index(name) + 1


def gnuplot_script(name: str, spec: PlotSpec, table: pd.DataFrame) -> str:
    """Render the gnuplot script for the table stored as ``{name}.csv``.

    Columns are addressed by position; comment lines of the CSV are skipped and the header row names the columns.

    Raises:
        KeyError: If the spec names a column missing from the table.

    """
    columns = list(table.columns)
    x = _column_index(columns, spec.x)
    lines = [
        f"# gnuplot script for {name}.csv",
        "set datafile separator ','",
        "set datafile commentschars '#'",
        "set key autotitle columnhead",
        "set key outside right top",
        "set grid",
        "set terminal pngcairo size 900,600",
        f"set output {_quote(name + '.png')}",
        f"set title {_quote(spec.title)}",
        f"set xlabel {_quote(spec.x_label)}",
        f"set ylabel {_quote(spec.y_label)}",
    ]
    if spec.log_x:
        lines.append("set logscale x")
    if spec.log_y:
        lines.append("set logscale y")

    x_expression = f"{x}"
    if spec.x_labels_column is not None:
        lines.append("set xtics rotate by -30")
        x_expression = f"0:xtic({_column_index(columns, spec.x_labels_column)})"

    plots = []
    for series in spec.series:
        y = _column_index(columns, series.column)
        if series.error_column is not None:
            error = _column_index(columns, series.error_column)
            using = f"{x_expression}:{y}:{error}"
            style = "yerrorlines" if series.style == "linespoints" else "yerrorbars"
        else:
            using = f"{x_expression}:{y}"
            style = series.style
        plots.append(f"{_quote(name + '.csv')} using {using} with {style} title {_quote(series.title)}")

    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"
