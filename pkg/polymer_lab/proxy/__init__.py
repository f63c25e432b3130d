from .exact_moments import (
    ProxyMoments,
    proxy_exact_moments,
    strip_tilted_means,
    strip_variances,
    tilted_mean_grid,
)
from .report import (
    ProxyReport,
    TiltedProxyEstimate,
    event_bound_sum,
    event_report,
    proxy_samples,
    proxy_tilted_variance_mc,
)
from .strips import (
    StripDecomposition,
    eta_rule,
    make_strips,
)
from .value import (
    proxy_value,
    strip_values,
)

__all__ = [
    "ProxyMoments",
    "proxy_exact_moments",
    "strip_tilted_means",
    "strip_variances",
    "tilted_mean_grid",
    "ProxyReport",
    "TiltedProxyEstimate",
    "event_bound_sum",
    "event_report",
    "proxy_samples",
    "proxy_tilted_variance_mc",
    "StripDecomposition",
    "eta_rule",
    "make_strips",
    "proxy_value",
    "strip_values",
]
