from .constants import (
    EULER_GAMMA,
    EXIT_CHECKS_FAILED,
    EXIT_INTERRUPTED,
    EXIT_INVALID_CONFIG,
    EXIT_UNKNOWN_EXPERIMENT,
    FIELD_STREAM_TAG,
    FINITE_VOLUME_THRESHOLD,
    LOG_DEFAULT_EXPERIMENT_CONTEXT,
    OVERLAP_ALPHA,
    PATH_STREAM_TAG,
    RENEWAL_STREAM_TAG,
    TILT_STREAM_TAG,
    WORKERS_ENVIRONMENT_VARIABLE,
)
from .enums import (
    DisorderFamily,
    KernelMode,
    ProxyMode,
)
from .exceptions import (
    CalibrationRangeException,
    ConfigurationException,
    ConsistencyException,
    DomainException,
    FieldTooLargeException,
    ParityException,
    ProxyEventUndefinedException,
    StripsTooThinException,
    WindowExceededException,
)
from .typing import (
    Check,
    CriticalPoint,
    McSummary,
    PartitionResult,
    Theta,
)

__all__ = [
    "EULER_GAMMA",
    "EXIT_CHECKS_FAILED",
    "EXIT_INTERRUPTED",
    "EXIT_INVALID_CONFIG",
    "EXIT_UNKNOWN_EXPERIMENT",
    "FIELD_STREAM_TAG",
    "FINITE_VOLUME_THRESHOLD",
    "LOG_DEFAULT_EXPERIMENT_CONTEXT",
    "OVERLAP_ALPHA",
    "PATH_STREAM_TAG",
    "RENEWAL_STREAM_TAG",
    "TILT_STREAM_TAG",
    "WORKERS_ENVIRONMENT_VARIABLE",
    "DisorderFamily",
    "KernelMode",
    "ProxyMode",
    "CalibrationRangeException",
    "ConfigurationException",
    "ConsistencyException",
    "DomainException",
    "FieldTooLargeException",
    "ParityException",
    "ProxyEventUndefinedException",
    "StripsTooThinException",
    "WindowExceededException",
    "Check",
    "CriticalPoint",
    "McSummary",
    "PartitionResult",
    "Theta",
]
