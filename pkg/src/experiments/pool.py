import logging
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import TypeVar

__all__ = ("WorkerPool",)

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """
    Bounded thread pool for sweep points.

    The executor is created on first use and reused until `close()`.
    Results are always returned in input order, so output never depends
    on the number of workers.
    """

    def __init__(self, threads: int = 1):
        if threads < 1:
            raise ValueError(f"Thread count must be at least 1, got {threads}")
        self.threads = threads
        self.executor: ThreadPoolExecutor | None = None

    def init_executor(self) -> None:
        """Create the underlying executor."""
        self.executor = ThreadPoolExecutor(max_workers=self.threads, thread_name_prefix="sweep")
        logger.debug("Started worker pool with %d threads", self.threads)

    def close(self) -> None:
        """Shut down the executor and wait for running tasks."""
        if self.executor is not None:
            self.executor.shutdown(wait=True)
            self.executor = None

    def __enter__(self) -> "WorkerPool":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    @contextmanager
    def session(self) -> Iterator[ThreadPoolExecutor]:
        """
        Context manager yielding the executor, created lazily.

        Yields:
            ThreadPoolExecutor shared by every session of this pool
        """
        if self.executor is None:
            self.init_executor()
        yield self.executor

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        """
        Apply fn to every item and gather the results in input order.

        Raises:
            Exception: The first exception raised by fn, in input order
        """
        items = list(items)
        if self.threads == 1:
            return [fn(item) for item in items]
        with self.session() as executor:
            return list(executor.map(fn, items))
