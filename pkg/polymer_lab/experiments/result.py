from typing import (
    Any,
    Dict,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

import pandas as pd
from polymer_lab.static import (
    Check,
    McSummary,
)

from .plot import PlotSpec


class ExperimentResult(NamedTuple):
    """Everything a driver hands back for the artifacts of one run."""

    table: pd.DataFrame  #: Main table, stored as ``{name}.csv``
    summary: Dict[str, Any]  #: JSON summary without the common provenance entries
    checks: List[Check]  #: Declared checks, the exit status is ``0`` iff all pass
    plot: PlotSpec  #: Layout of ``{name}.plot``
    blocks: Optional[pd.DataFrame] = None  #: Per-block means of the Monte Carlo estimates, if any

    @property
    def failed(self) -> List[Check]:
        return [check for check in self.checks if not check.passed]


def blocks_frame(estimates: Sequence[Tuple[str, McSummary]]) -> pd.DataFrame:
    """Long table ``quantity, block, mean`` of the block means of labelled estimates.

    Exact values without block means contribute no rows.
    """
    rows = [
        {"quantity": label, "block": block, "mean": mean}
        for label, summary in estimates
        for block, mean in enumerate(summary.block_means)
    ]
    return pd.DataFrame(rows, columns=["quantity", "block", "mean"])
