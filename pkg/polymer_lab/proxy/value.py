"""Evaluation of the coarse-grained proxy ``X = X_2 + X_4 + ... + X_2M`` on one environment.

``X_j`` collects the chaos components of the point-to-plane partition function whose cells all lie in the strip
``I_j``. The walk enters the strip with law ``mu_j = q_s`` (``s`` the first time of the strip) and only the weights of
the strip are collected, so the full component is ``sum_z mu_j(z) Z_strip(z) - 1``. Truncated components keep the
cell sets of size ``1..K``; they are resolved by order, ``xi = exp(beta omega - lambda) - 1`` entering once per order.
"""
import math
from typing import (
    List,
    Optional,
)

import numpy as np
from polymer_lab import master_config
from polymer_lab.engine import (
    DiamondField,
    forward_pass,
)
from polymer_lab.lattice import (
    kernel_slice,
    resize,
    step_forward,
)
from polymer_lab.static import (
    DomainException,
    ParityException,
    ProxyMode,
)

from .strips import StripDecomposition


def _entry_law(field: DiamondField, s: int) -> np.ndarray:
    return kernel_slice(s, field.half_width(s))


def _full_component(field: DiamondField, beta: float, s: int, t: int) -> float:
    final, _ = forward_pass(field, beta, _entry_law(field, s), start=s, stop=t)
    return float(final.values.sum()) * math.exp(final.log_norm) - 1.0


def _truncated_component(field: DiamondField, beta: float, s: int, t: int, truncation: int) -> float:
    widths = field.half_widths()
    lam = field.model.cumulant(beta)
    entry = _entry_law(field, s)
    # orders[k] carries the walk mass weighted by the products of xi over k visited strip cells
    orders = [entry] + [np.zeros_like(entry) for _ in range(truncation)]
    for n in range(s + 1, t + 1):
        xi = np.expm1(beta * field.values(n) - lam)
        stepped = [resize(step_forward(values), widths[n - 1] + 1, widths[n]) for values in orders]
        orders = [stepped[0]] + [stepped[k] + xi * stepped[k - 1] for k in range(1, truncation + 1)]
    return math.fsum(float(values.sum()) for values in orders[1:])


def strip_values(
    field: DiamondField,
    beta: float,
    strips: StripDecomposition,
    truncation: Optional[int] = None,
    mode: ProxyMode = ProxyMode.untruncated,
) -> np.ndarray:
    """Return the components ``X_2, X_4, ..., X_2M`` of the proxy on one environment.

    Args:
        field: Environment of horizon at least ``N_eff`` whose support parity is even.
        beta: Disorder strength.
        strips: Strip decomposition.
        truncation: Largest cell-set size ``K`` of the truncated mode, ignored otherwise.
        mode: Untruncated (default) or truncated evaluation.

    Raises:
        DomainException: If the field is too short, or the truncated mode is requested without ``K`` or beyond
            :data:`~polymer_lab.master_config.truncated_proxy_max_horizon`.
        ParityException: If the field was built for an odd support.

    """
    if field.horizon < strips.n_effective:
        raise DomainException(f"Field horizon {field.horizon} is shorter than N_eff={strips.n_effective}")
    if field.parity != 0:
        raise ParityException("The proxy walk starts at the origin, the field must hold the even sublattice")
    if mode is ProxyMode.truncated:
        if strips.n_effective > master_config.truncated_proxy_max_horizon:
            raise DomainException(
                f"The truncated proxy is limited to N_eff <= {master_config.truncated_proxy_max_horizon}, "
                f"got N_eff={strips.n_effective}"
            )
        if truncation is None or truncation < 1:
            raise DomainException(f"The truncated proxy needs an order K >= 1, got {truncation}")

    bounds = strips.even_strips()
    if beta == 0:
        return np.zeros(len(bounds))

    values: List[float] = []
    for s, t in bounds:
        if mode is ProxyMode.truncated:
            values.append(_truncated_component(field, beta, s, t, truncation))  # type: ignore
        else:
            values.append(_full_component(field, beta, s, t))
    return np.array(values)


def proxy_value(
    field: DiamondField,
    beta: float,
    strips: StripDecomposition,
    truncation: Optional[int] = None,
    mode: ProxyMode = ProxyMode.untruncated,
) -> float:
    """Return ``X = X_2 + X_4 + ... + X_2M``, see :func:`strip_values`."""
    return math.fsum(strip_values(field, beta, strips, truncation, mode))
