from enum import (
    Enum,
    unique,
)


@unique
class DisorderFamily(Enum):
    """Supported laws of the environment, all centred with unit variance."""

    gaussian = "gaussian"
    rademacher = "rademacher"
    bounded_uniform = "bounded-uniform"


@unique
class KernelMode(Enum):
    """Exact convolution kernel or its local central limit approximation."""

    exact = "exact"
    local_clt = "local-clt"


@unique
class ProxyMode(Enum):
    """Evaluation mode of the coarse-grained proxy statistic."""

    #: Full strip partition function minus one (default).
    untruncated = "untruncated"
    #: Chaos components of order ``1..K`` only, for oracle checks at toy sizes.
    truncated = "truncated"
