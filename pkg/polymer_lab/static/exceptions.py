from typing import (
    List,
    Optional,
)


class ConfigurationException(Exception):
    """Experiment configuration error. Indicates config keys are unknown, malformed or inconsistent."""

    def __init__(self, message: str, violations: Optional[List[str]] = None):
        super().__init__(message)
        self.violations = violations if violations is not None else [message]


class DomainException(ValueError):
    """Argument outside the mathematical domain of an operation (e.g. ``u(0)`` or ``lambda <= 0``)."""

    pass


class WindowExceededException(Exception):
    """Requested lattice site lies outside the persisted kernel window or the reachable cone."""

    pass


class ParityException(ValueError):
    """Mass placed on lattice sites whose parity is not admissible at the requested time."""

    pass


class CalibrationRangeException(Exception):
    """No disorder strength realizes the requested calibration."""

    pass


class FieldTooLargeException(MemoryError):
    """Materializing a disorder field would exceed the configured memory cap."""

    pass


class StripsTooThinException(ValueError):
    """Time strips of the coarse-grained proxy are too thin for the requested horizon."""

    pass


class ProxyEventUndefinedException(Exception):
    """The Chebyshev event of the proxy statistic needs a positive size-biased mean."""

    pass


class ConsistencyException(ArithmeticError):
    """Two independent computation routes of the same quantity disagree beyond tolerance."""

    pass
