"""Setup Python :mod:warnings module."""

import warnings

from scipy.integrate import IntegrationWarning


def initialize_warnings() -> None:
    """Initialize filters for expected numerical warnings.

    The Dickman tail integral is deliberately evaluated beyond the point where its integrand underflows.
    """
    warnings.filterwarnings("ignore", category=IntegrationWarning, module="polymer_lab.lattice.dickman")
    warnings.filterwarnings("error", message="overflow encountered", category=RuntimeWarning)
