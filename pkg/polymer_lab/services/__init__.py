from .artifact_output import ArtifactOutput
from .initialize import (
    Services,
    initialize,
)
from .logging import (
    initialize_logging,
    reset_logging_context,
    set_logging_context,
)
from .multiprocessing import initialize_multiprocessing
from .random_streams import (
    open_uniforms,
    stream,
)
from .replica_executor import (
    ParallelContext,
    ReplicaBlock,
    execute_blocks,
    replica_blocks,
)
from .runtime_config import RuntimeConfig
from .signal_handler import initialize_faulthandler
from .warnings import initialize_warnings

__all__ = [
    "initialize",
    "initialize_warnings",
    "initialize_logging",
    "initialize_faulthandler",
    "initialize_multiprocessing",
    "set_logging_context",
    "reset_logging_context",
    "ArtifactOutput",
    "RuntimeConfig",
    "Services",
    "ParallelContext",
    "ReplicaBlock",
    "execute_blocks",
    "replica_blocks",
    "open_uniforms",
    "stream",
]
