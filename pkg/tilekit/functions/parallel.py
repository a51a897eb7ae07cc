from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Callable

from stgpytools import CustomValueError, T

from .progress import get_progress

__all__ = [
    'THREADS_ENV',

    'WorkerConfig',
    'WorkerConfigT',

    'resolve_threads',

    'map_row_chunks'
]

THREADS_ENV = 'TILEKIT_THREADS'
"""Environment variable read when no thread count is given."""


def resolve_threads(threads: int | None = None) -> int:
    """Explicit thread count, else ``TILEKIT_THREADS``, else 1."""

    if threads is None:
        env = os.environ.get(THREADS_ENV, '').strip()

        if not env:
            return 1

        try:
            threads = int(env)
        except ValueError:
            raise CustomValueError(
                '{env} must be a positive integer, got "{value}"!', resolve_threads, env=THREADS_ENV, value=env
            ) from None

    if threads < 1:
        raise CustomValueError('Thread count must be >= 1, got {threads}!', resolve_threads, threads=threads)

    return threads


@dataclass(frozen=True)
class WorkerConfig:
    """How grid computations are split across rows and threads."""

    threads: int | None = None
    """Worker threads. None reads ``TILEKIT_THREADS``, falling back to 1."""

    rows_per_chunk: int | None = None
    """Rows of the Tile computed together. None sizes chunks from ``chunk_elements``."""

    chunk_elements: int = 1 << 22
    """Approximate number of array elements a chunk may hold."""

    def __post_init__(self) -> None:
        if self.rows_per_chunk is not None and self.rows_per_chunk < 1:
            raise CustomValueError('rows_per_chunk must be >= 1!', WorkerConfig)

        if self.chunk_elements < 1:
            raise CustomValueError('chunk_elements must be >= 1!', WorkerConfig)

    @property
    def thread_count(self) -> int:
        return resolve_threads(self.threads)

    def chunks(self, rows: int, row_elements: int) -> list[slice]:
        """
        Split ``rows`` rows into contiguous slices.

        The split only depends on the sizes, never on the thread count.
        """

        step = self.rows_per_chunk or max(1, self.chunk_elements // max(row_elements, 1))

        return [slice(start, min(start + step, rows)) for start in range(0, rows, step)]

    @classmethod
    def from_param(cls, value: WorkerConfigT) -> WorkerConfig:
        if isinstance(value, WorkerConfig):
            return value

        return cls(threads=value)


WorkerConfigT = WorkerConfig | int | None


def map_row_chunks(
    func: Callable[[slice], T], rows: int, row_elements: int,
    workers: WorkerConfigT = None, progress: str | None = None
) -> list[T]:
    """
    Apply ``func`` to every row chunk of a grid, in parallel.

    :param func:            Called with a row slice, must not touch shared mutable state.
    :param rows:            Number of rows.
    :param row_elements:    Array elements a single row needs, used to size chunks.
    :param workers:         Worker configuration or a thread count.
    :param progress:        A message to display during computation.

    :return:                Results in row order, whatever the scheduling.
    """

    workers = WorkerConfig.from_param(workers)

    chunks = workers.chunks(rows, row_elements)
    threads = min(workers.thread_count, len(chunks))

    results = dict[int, T]()

    with get_progress(progress, len(chunks)) as pr:
        if threads <= 1:
            for k, chunk in enumerate(chunks):
                results[k] = func(chunk)
                pr.update()
        else:
            with ThreadPoolExecutor(max_workers=threads) as executor:
                futures = {executor.submit(func, chunk): k for k, chunk in enumerate(chunks)}

                for future in as_completed(futures):
                    results[futures[future]] = future.result()
                    pr.update()

    return [results[k] for k in range(len(chunks))]
