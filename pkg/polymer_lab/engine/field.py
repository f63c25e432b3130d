"""Disorder fields on the reachable cone of a directed polymer.

A field of horizon ``N`` started from a support of ℓ¹ radius ``r0`` stores ``omega(n, x)`` for ``1 <= n <= N`` on the
rotated slice of half-width ``h0 + n`` (see :mod:`polymer_lab.lattice.geometry`), where ``h0`` is the largest
half-width ``<= r0`` of the support parity. An optional truncation caps every slice at a constant half-width.

The value of cell ``(n, x)`` is the inverse distribution function image of the uniform at the ℓ∞ shell position of
``x`` in the stream keyed by ``(seed, replica, n)``. It does not depend on the radius of the cone, on the truncation
or on the order in which slices are built.
"""
import logging
import math
from dataclasses import (
    dataclass,
    replace,
)
from typing import (
    List,
    Mapping,
    Optional,
    Tuple,
)

import numpy as np
import pandas as pd
from polymer_lab import master_config
from polymer_lab.disorder import DisorderModel
from polymer_lab.lattice import (
    shell_positions,
    site_index,
    slice_sites,
)
from polymer_lab.services import (
    open_uniforms,
    stream,
)
from polymer_lab.static import (
    FIELD_STREAM_TAG,
    DomainException,
    FieldTooLargeException,
    ParityException,
    WindowExceededException,
)

logger = logging.getLogger("engine")

#: ``(n, x1, x2)`` address of one field cell.
Cell = Tuple[int, int, int]


def cone_half_widths(horizon: int, radius: int, parity: int = 0, truncation: Optional[int] = None) -> List[int]:
    """Return the slice half-widths ``t_0, ..., t_N`` of a field.

    ``t_0`` is the half-width of the initial support. Without truncation ``t_n = t_0 + n``; with a truncation ``w``
    every slice is capped at the largest half-width ``<= w`` of the right parity.

    Raises:
        DomainException: If the arguments describe an empty cone.

    """
    if horizon < 0:
        raise DomainException(f"Field horizon must be non-negative, got {horizon}")
    if parity not in (0, 1):
        raise DomainException(f"Origin parity must be 0 or 1, got {parity}")
    base = radius - ((radius - parity) % 2)
    if base < 0:
        raise DomainException(f"No site of parity {parity} lies within ℓ¹ radius {radius}")
    if truncation is not None and truncation <= base:
        raise DomainException(f"Truncation half-width {truncation} must exceed the support half-width {base}")
    widths = [base + n for n in range(horizon + 1)]
    if truncation is not None:
        widths = [min(width, truncation - ((truncation - width) % 2)) for width in widths]
    return widths


def default_cone_truncation(horizon: int, radius: int = 0) -> Optional[int]:
    """Truncation half-width used when none is configured, ``None`` (full cone) for short horizons."""
    if horizon <= master_config.exact_cone_max_horizon:
        return None
    return radius + math.ceil(master_config.cone_truncation_factor * math.sqrt(horizon * math.log(horizon)))


def field_memory_estimate(horizon: int, radius: int, parity: int = 0, truncation: Optional[int] = None) -> int:
    """Bytes needed to materialize a field of these dimensions in double precision."""
    widths = cone_half_widths(horizon, radius, parity, truncation)
    return 8 * sum((width + 1) ** 2 for width in widths[1:])


@dataclass(frozen=True, eq=False)
class DiamondField:
    """Environment values on the cone ``|x|_1 <= n + r0`` for ``1 <= n <= N``.

    ``slices[n - 1]`` holds ``omega(n, .)`` on the rotated slice of half-width :meth:`half_width` ``(n)``.
    """

    model: DisorderModel
    horizon: int
    radius: int
    seed: int
    replica: int
    parity: int
    truncation: Optional[int]
    slices: Tuple[np.ndarray, ...]

    def half_width(self, n: int) -> int:
        """Half-width of the slice at time ``n``, ``n = 0`` gives the support slice."""
        return cone_half_widths(n, self.radius, self.parity, self.truncation)[n]

    def half_widths(self) -> List[int]:
        """Half-widths of all slices including time 0."""
        return cone_half_widths(self.horizon, self.radius, self.parity, self.truncation)

    def values(self, n: int) -> np.ndarray:
        """Slice ``omega(n, .)``, read-only."""
        if not 1 <= n <= self.horizon:
            raise DomainException(f"Field time {n} is outside 1..{self.horizon}")
        return self.slices[n - 1]

    def value(self, n: int, x: Tuple[int, int]) -> float:
        """Single value ``omega(n, x)``."""
        return float(self.values(n)[self._index(n, x)])

    def weights(self, beta: float, n: int) -> np.ndarray:
        """Normalized weights ``exp(beta omega(n, .) - lambda(beta))`` of one slice."""
        return np.exp(beta * self.values(n) - self.model.cumulant(beta))

    @property
    def cell_count(self) -> int:
        """Number of stored cells."""
        return sum(values.size for values in self.slices)

    def with_cells(self, cells: Mapping[Cell, float]) -> "DiamondField":
        """Return a copy with the given cells replaced, all other values are shared."""
        slices = list(self.slices)
        copied = set()
        for (n, x1, x2), value in cells.items():
            index = self._index(n, (x1, x2))
            if n not in copied:
                slices[n - 1] = slices[n - 1].copy()
                copied.add(n)
            slices[n - 1][index] = value
        for n in copied:
            slices[n - 1].setflags(write=False)
        return replace(self, slices=tuple(slices))

    def to_frame(self) -> pd.DataFrame:
        """Export every cell as ``(n, x1, x2, omega)`` rows, for tiny fields only.

        Raises:
            DomainException: If the horizon exceeds :data:`~polymer_lab.master_config.field_export_max_horizon`.

        """
        if self.horizon > master_config.field_export_max_horizon:
            raise DomainException(
                f"Field snapshots are exported up to N={master_config.field_export_max_horizon}, got N={self.horizon}"
            )
        frames = []
        for n, values in enumerate(self.slices, start=1):
            x1, x2 = slice_sites(values.shape[0] - 1)
            frames.append(
                pd.DataFrame({"n": n, "x1": x1.ravel(), "x2": x2.ravel(), "omega": values.ravel()})
            )
        df = pd.concat(frames, ignore_index=True)
        return df.sort_values(["n", "x1", "x2"], ignore_index=True)

    def _index(self, n: int, x: Tuple[int, int]) -> Tuple[int, int]:
        if not 1 <= n <= self.horizon:
            raise DomainException(f"Field time {n} is outside 1..{self.horizon}")
        if (x[0] + x[1] - n - self.parity) % 2 != 0:
            raise ParityException(f"Site {tuple(x)} is not reachable at time {n} from parity {self.parity}")
        try:
            return site_index(self.half_width(n), x)
        except ValueError as e:
            raise WindowExceededException(f"Cell ({n}, {x[0]}, {x[1]}) lies outside the stored cone") from e


def _sample_slice(model: DisorderModel, seed: int, replica: int, n: int, half_width: int) -> np.ndarray:
    uniforms = open_uniforms(stream(seed, FIELD_STREAM_TAG, replica, n), (half_width + 1) ** 2)
    values = model.quantile(uniforms[shell_positions(half_width)])
    values.setflags(write=False)
    return values


def sample_field(
    model: DisorderModel,
    horizon: int,
    seed: int,
    replica: int = 0,
    radius: int = 0,
    parity: int = 0,
    truncation: Optional[int] = None,
    memory_cap_bytes: Optional[int] = None,
) -> DiamondField:
    """Draw the i.i.d. environment of one replica on its reachable cone.

    Args:
        model: Law of every cell.
        horizon: Horizon ``N >= 1``.
        seed: Master seed.
        replica: Replica index, fields of different replicas are independent.
        radius: ℓ¹ radius ``r0`` of the initial support.
        parity: Parity of ``x1 + x2`` on the initial support.
        truncation: Optional constant half-width cap of every slice.
        memory_cap_bytes: Override of :data:`~polymer_lab.master_config.field_memory_cap_bytes`.

    Returns:
        Immutable field.

    Raises:
        DomainException: If ``N < 1`` or the cone is empty.
        FieldTooLargeException: If the field would exceed the memory cap.

    """
    if horizon < 1:
        raise DomainException(f"Fields need a horizon of at least 1, got {horizon}")
    widths = cone_half_widths(horizon, radius, parity, truncation)
    cap = memory_cap_bytes if memory_cap_bytes is not None else master_config.field_memory_cap_bytes
    estimate = field_memory_estimate(horizon, radius, parity, truncation)
    if estimate > cap:
        raise FieldTooLargeException(
            f"Field of horizon {horizon}, radius {radius} and truncation {truncation} needs "
            f"{estimate / 1024 ** 2:.1f} MiB, more than the cap of {cap / 1024 ** 2:.1f} MiB"
        )

    slices = tuple(_sample_slice(model, seed, replica, n, widths[n]) for n in range(1, horizon + 1))
    logger.debug(f"Sampled field of replica {replica}: N={horizon}, radius={radius}, {estimate // 8} cells")
    return DiamondField(model, horizon, radius, seed, replica, parity, truncation, slices)
