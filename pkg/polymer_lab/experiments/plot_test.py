import pandas as pd
import pytest

from .plot import (
    PlotSpec,
    Series,
    gnuplot_script,
)

TABLE = pd.DataFrame({"theta": [0.0, 1.0], "truncated_mean": [0.9, 0.7], "stderr": [0.01, 0.02], "floor": [0.5, 0.4]})


def test_script_references_only_its_own_table() -> None:
    spec = PlotSpec(x="theta", series=[Series("truncated_mean", "E[Z ∧ 1]")], title="decay", x_label="t", y_label="m")

    script = gnuplot_script("decay-vs-theta", spec, TABLE)

    assert "set datafile separator ','" in script
    assert 'set output "decay-vs-theta.png"' in script
    assert script.endswith('plot "decay-vs-theta.csv" using 1:2 with linespoints title "E[Z ∧ 1]"\n')
    assert "/" not in script.splitlines()[-1]


def test_error_columns_and_log_scales() -> None:
    spec = PlotSpec(
        x="theta",
        series=[Series("truncated_mean", "mean", error_column="stderr"), Series("floor", "floor", style="lines")],
        title="decay",
        x_label="theta",
        y_label="mean",
        log_y=True,
    )

    lines = gnuplot_script("decay", spec, TABLE).splitlines()

    assert "set logscale y" in lines
    assert "set logscale x" not in lines
    assert lines[-2] == 'plot "decay.csv" using 1:2:3 with yerrorlines title "mean", \\'
    assert lines[-1] == '     "decay.csv" using 1:4 with lines title "floor"'


def test_labelled_x_axis() -> None:
    table = pd.DataFrame({"quantity": ["a", "b"], "estimate": [1.0, 2.0]})
    spec = PlotSpec(
        x="quantity",
        series=[Series("estimate", "estimate", style="points")],
        title="identity",
        x_label="",
        y_label="value",
        x_labels_column="quantity",
    )

    script = gnuplot_script("tv-identity", spec, table)

    assert 'using 0:xtic(1):2 with points title "estimate"' in script


def test_quotes_are_escaped() -> None:
    spec = PlotSpec(x="theta", series=[Series("floor", 'say "hi"')], title="t", x_label="x", y_label="y")

    assert 'title "say \\"hi\\""' in gnuplot_script("quoted", spec, TABLE)


def test_unknown_column() -> None:
    spec = PlotSpec(x="theta", series=[Series("missing", "missing")], title="t", x_label="x", y_label="y")

    with pytest.raises(KeyError, match="missing"):
        gnuplot_script("broken", spec, TABLE)
