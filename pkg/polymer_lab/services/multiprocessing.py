import multiprocessing
from multiprocessing.context import SpawnContext


def initialize_multiprocessing() -> SpawnContext:
    """Return the ``spawn`` start method context used for all replica workers.

    Workers start from a fresh interpreter, so nothing but the pickled replica task and the log queue crosses the
    process boundary. Random streams are derived from the master seed inside the task and never inherited.

    Note:
        https://docs.python.org/3/library/multiprocessing.html#the-spawn-and-forkserver-start-methods
    """
    return multiprocessing.get_context("spawn")
