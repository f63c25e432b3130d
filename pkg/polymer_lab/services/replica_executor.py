import logging
from concurrent.futures import ProcessPoolExecutor
from multiprocessing import Queue
from multiprocessing.context import SpawnContext
from typing import (
    Callable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    TypeVar,
)

from polymer_lab import master_config

from .logging import initialize_worker_logging
from .signal_handler import initialize_worker_termination_signal

logger = logging.getLogger("replica_executor")

T = TypeVar("T")


class ReplicaBlock(NamedTuple):
    """Contiguous range ``start <= replica < stop`` of replica indices, the unit of parallel work."""

    index: int
    start: int
    stop: int

    @property
    def size(self) -> int:
        """Number of replicas in this block."""
        return self.stop - self.start


class ParallelContext(NamedTuple):
    """Everything a replica worker pool needs from the parent process."""

    multiprocessing_context: SpawnContext
    log_queue: "Queue[logging.LogRecord]"
    workers: int


def replica_blocks(reps: int, block_size: Optional[int] = None) -> List[ReplicaBlock]:
    """Split ``reps`` replicas into blocks of :data:`~polymer_lab.master_config.replica_block_size`.

    The last block may be shorter. Fewer than two full blocks fall back to one replica per block so that the
    jackknife still has at least two groups.

    Args:
        reps: Number of replicas, at least 1.
        block_size: Override of the configured block size.

    Returns:
        Blocks in replica order.

    """
    assert reps > 0, f"Expected a positive replica count, got {reps}"
    size = block_size or master_config.replica_block_size
    if reps < 2 * size:
        size = 1
    return [ReplicaBlock(index, start, min(start + size, reps)) for index, start in enumerate(range(0, reps, size))]


def execute_blocks(
    task: Callable[[ReplicaBlock], T], blocks: Sequence[ReplicaBlock], parallel: Optional[ParallelContext] = None,
) -> List[T]:
    """Evaluate ``task`` on every block, in parallel when a worker pool is configured.

    Results are returned in block order whatever the completion order, which keeps every reduction over blocks
    independent of the worker count. ``task`` must be picklable (a module-level function or a
    :func:`functools.partial` of one) when more than one worker is used.

    Args:
        task: Function mapping a block to its result.
        blocks: Blocks to evaluate.
        parallel: Worker pool settings, ``None`` runs in the current process.

    Returns:
        One result per block.

    Raises:
        Exception: The last error raised by any worker, after all errors have been logged.

    """
    workers = parallel.workers if parallel else 1
    assert workers > 0, "Expected the number of workers to be greater than 0."

    if parallel is None or workers <= 1 or len(blocks) <= 1:
        logger.debug(f"Evaluating {len(blocks)} replica blocks sequentially (workers={workers})")
        return [task(block) for block in blocks]

    logger.info(f"Evaluating {len(blocks)} replica blocks on {workers} worker processes")
    with ProcessPoolExecutor(
        max_workers=workers,
        mp_context=parallel.multiprocessing_context,
        initializer=_initialize_worker,
        initargs=(parallel.log_queue,),
    ) as executor:
        futures = [executor.submit(task, block) for block in blocks]

    last_error: Optional[BaseException] = None
    for future in futures:
        error = future.exception()
        if error:
            logger.error(f"Error in replica worker: {error}")
            last_error = error

    if last_error:
        raise last_error

    return [future.result() for future in futures]


def _initialize_worker(log_queue: "Queue[logging.LogRecord]") -> None:  # pragma: no cover
    initialize_worker_termination_signal()
    initialize_worker_logging(log_queue)
