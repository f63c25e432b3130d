"""Transfer-matrix evaluation of partition functions on a sampled field.

The forward pass evolves ``W_n(y) = exp(beta omega(n, y) - lambda(beta)) sum_x W_{n-1}(x) q_1(y - x)`` from an initial
mass, the backward pass evolves ``V_{n-1}(x) = sum_y q_1(y - x) exp(beta omega(n, y) - lambda(beta)) V_n(y)`` from
``V_N = 1``. Whenever the largest entry of a slice leaves the configured range, the slice is divided by its sum and the
logarithm of the sum is accumulated in ``log_norm``.
"""
import logging
import math
from typing import (
    Iterable,
    List,
    NamedTuple,
    Optional,
    Tuple,
)

import numpy as np
from polymer_lab import master_config
from polymer_lab.lattice import (
    crop,
    resize,
    site_index,
    slice_sites,
    step_backward,
    step_forward,
)
from polymer_lab.moments.mass import (
    MassFunction,
    dirac,
)
from polymer_lab.static import (
    DomainException,
    ParityException,
    PartitionResult,
    WindowExceededException,
)

from .field import DiamondField

logger = logging.getLogger("engine")


class _Pass(NamedTuple):
    values: np.ndarray
    log_norm: float
    renormalizations: int


def _renormalize(values: np.ndarray, log_norm: float, count: int, force: bool) -> Tuple[np.ndarray, float, int]:
    peak = float(values.max()) if values.size else 0.0
    if peak <= 0:
        return values, log_norm, count
    if force or peak > master_config.renormalization_upper or peak < master_config.renormalization_lower:
        total = float(values.sum())
        return values / total, log_norm + math.log(total), count + 1
    return values, log_norm, count


def forward_pass(
    field: DiamondField,
    beta: float,
    initial: np.ndarray,
    start: int = 0,
    stop: Optional[int] = None,
    force_renormalization: bool = False,
    keep_slices: bool = False,
) -> Tuple[_Pass, List[_Pass]]:
    """Run the forward recursion from time ``start`` to ``stop`` (default ``N``).

    Args:
        field: Environment.
        beta: Disorder strength.
        initial: Mass at time ``start`` on the slice of half-width ``field.half_width(start)``.
        start: Initial time.
        stop: Final time.
        force_renormalization: Renormalize after every step.
        keep_slices: Also return the renormalized slice of every time ``start + 1 .. stop``.

    Returns:
        The final slice and, if requested, every intermediate one.

    """
    stop = field.horizon if stop is None else stop
    widths = field.half_widths()
    lam = field.model.cumulant(beta)
    current, log_norm, count = initial.astype(float, copy=True), 0.0, 0
    kept: List[_Pass] = []
    for n in range(start + 1, stop + 1):
        current = resize(step_forward(current), widths[n - 1] + 1, widths[n])
        current = current * np.exp(beta * field.values(n) - lam)
        current, log_norm, count = _renormalize(current, log_norm, count, force_renormalization)
        if keep_slices:
            kept.append(_Pass(current, log_norm, count))
    return _Pass(current, log_norm, count), kept


def backward_pass(
    field: DiamondField,
    beta: float,
    start: int = 0,
    stop: Optional[int] = None,
    force_renormalization: bool = False,
    keep_slices: bool = False,
) -> Tuple[_Pass, List[_Pass]]:
    """Run the backward recursion from ``V_stop = 1`` down to time ``start``.

    Returns:
        The slice ``V_start`` and, if requested, the slices ``V_stop, ..., V_{start + 1}`` in that order.

    """
    stop = field.horizon if stop is None else stop
    widths = field.half_widths()
    lam = field.model.cumulant(beta)
    current = np.ones((widths[stop] + 1, widths[stop] + 1))
    log_norm, count = 0.0, 0
    kept: List[_Pass] = []
    for n in range(stop, start, -1):
        if keep_slices:
            kept.append(_Pass(current, log_norm, count))
        current = resize(step_backward(current * np.exp(beta * field.values(n) - lam)), widths[n] - 1, widths[n - 1])
        current, log_norm, count = _renormalize(current, log_norm, count, force_renormalization)
    return _Pass(current, log_norm, count), kept


def _initial_slice(field: DiamondField, f: MassFunction, time: int) -> np.ndarray:
    expected_parity = (field.parity + time) % 2
    if f.parity != expected_parity:
        raise ParityException(
            f"Initial mass of parity {f.parity} is not admissible at time {time} (expected parity {expected_parity})"
        )
    return f.to_slice(field.half_width(time))


def partition_field(
    field: DiamondField, beta: float, f: MassFunction, force_renormalization: bool = False
) -> PartitionResult:
    """Return ``Z_N(f) = sum_x f(x) Z_N(x)`` by one forward pass.

    Args:
        field: Environment.
        beta: Disorder strength.
        f: Initial mass on admissible sites within the field radius, not necessarily normalized.
        force_renormalization: Renormalize after every step, the result must not change.

    Raises:
        ParityException: If ``f`` lives on the other parity class.
        WindowExceededException: If ``f`` is supported outside the field radius.

    """
    final, _ = forward_pass(field, beta, _initial_slice(field, f, 0), force_renormalization=force_renormalization)
    return PartitionResult(float(final.values.sum()), final.log_norm, final.renormalizations)


def partition_all_starts(
    field: DiamondField, beta: float, window_radius: Optional[int] = None, force_renormalization: bool = False
) -> PartitionResult:
    """Return ``Z_N(x)`` for every starting site ``x`` by one backward pass.

    Args:
        field: Environment.
        beta: Disorder strength.
        window_radius: ℓ¹ radius of the requested window, defaults to the field radius.
        force_renormalization: Renormalize after every step.

    Returns:
        Slice of ``Z_N(x)`` (up to ``exp(log_norm)``) on the rotated slice of the window, see
        :func:`start_sites` for the matching coordinates.

    Raises:
        WindowExceededException: If the window exceeds the field radius.

    """
    initial_width = field.half_width(0)
    final, _ = backward_pass(field, beta, force_renormalization=force_renormalization)
    values = final.values
    if window_radius is not None:
        width = window_radius - ((window_radius - field.parity) % 2)
        if width > initial_width:
            raise WindowExceededException(
                f"Window radius {window_radius} exceeds the field support radius {field.radius}"
            )
        if width < 0:
            raise DomainException(f"Window radius {window_radius} holds no site of parity {field.parity}")
        values = crop(values, initial_width, width)
    return PartitionResult(values, final.log_norm, final.renormalizations)


def start_sites(result: PartitionResult) -> Tuple[np.ndarray, np.ndarray]:
    """Lattice coordinates ``(x1, x2)`` of the entries of a :func:`partition_all_starts` table."""
    return slice_sites(np.shape(result.value)[0] - 1)


def partition_constrained(
    field: DiamondField,
    beta: float,
    mu: MassFunction,
    s: int,
    t: int,
    target: Optional[Iterable[Tuple[int, int]]] = None,
) -> PartitionResult:
    """Return ``Z_{s,t}(mu; B)``, the partition function from time ``s`` with mass ``mu`` ending in ``B`` at time ``t``.

    Weights of times ``s + 1 .. t`` are collected; ``s = t`` returns ``mu(B)``.

    Args:
        field: Environment.
        beta: Disorder strength.
        mu: Mass at time ``s`` on sites admissible at that time.
        s: Initial time.
        t: Final time, ``s <= t <= N``.
        target: Sites of ``B``, ``None`` for the whole lattice.

    Returns:
        Partition function, ``0`` with ``empty_target=True`` for an empty ``B``.

    """
    if not 0 <= s <= t <= field.horizon:
        raise DomainException(f"Constrained partition needs 0 <= s <= t <= {field.horizon}, got s={s}, t={t}")
    initial = _initial_slice(field, mu, s)

    mask: Optional[np.ndarray] = None
    if target is not None:
        targets = list(target)
        if not targets:
            logger.warning(f"Empty target set for the constrained partition function between times {s} and {t}")
            return PartitionResult(0.0, 0.0, empty_target=True)
        width = field.half_width(t)
        mask = np.zeros((width + 1, width + 1), dtype=bool)
        for x in targets:
            if (x[0] + x[1] - t - field.parity) % 2 != 0:
                continue
            try:
                mask[site_index(width, x)] = True
            except ValueError:
                # unreachable sites carry no mass
                continue

    final, _ = forward_pass(field, beta, initial, start=s, stop=t)
    values = final.values if mask is None else np.where(mask, final.values, 0.0)
    return PartitionResult(float(values.sum()), final.log_norm, final.renormalizations)


def grad_log_norm_terms(field: DiamondField, beta: float, f: Optional[MassFunction] = None) -> List[np.ndarray]:
    """Return the slices of ``d log Z_N(f) / d omega(n, y)`` for ``n = 1 .. N``.

    The derivative equals ``beta W_n(y) V_n(y) / Z`` where ``W_n`` is the forward slice (weight of ``(n, y)``
    included), ``V_n`` the backward slice from ``(n, y)`` and ``Z = sum_y W_n(y) V_n(y)`` at every time ``n``.
    """
    f = dirac() if f is None else f
    if beta == 0:
        return [np.zeros_like(values) for values in field.slices]
    _, forward = forward_pass(field, beta, _initial_slice(field, f, 0), keep_slices=True)
    _, backward = backward_pass(field, beta, keep_slices=True)
    terms = []
    for n in range(1, field.horizon + 1):
        product = forward[n - 1].values * backward[field.horizon - n].values
        terms.append(beta * product / product.sum())
    return terms


def grad_log_norm(field: DiamondField, beta: float, f: Optional[MassFunction] = None) -> float:
    """Return ``|grad log Z_N(f)|²`` over all cells of the field.

    This is ``beta²`` times the two-replica collision functional ``sum_{n, y} (W_n(y) V_n(y))²`` divided by ``Z²``.
    """
    return math.fsum(float(np.square(terms).sum()) for terms in grad_log_norm_terms(field, beta, f))
