"""Run independent experiment jobs, optionally across processes.

Results always come back in input order, so output files do not depend on
the job count. *fn* must be a module-level function (workers pickle it).
"""

from __future__ import annotations

import logging
import multiprocessing
from typing import Callable, Iterable, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


def run_ordered(
    fn: Callable[[T], R],
    items: Iterable[T],
    jobs: int = 1,
    progress: Optional[Callable[[int, int], None]] = None,
) -> list[R]:
    """Apply *fn* to every item; ``jobs > 1`` dispatches to a process pool.

    Args:
        fn: picklable worker.
        items: work items, consumed once.
        jobs: worker processes; 1 runs inline.
        progress: called as ``progress(done, total)`` after each result.
    """
    work = list(items)
    total = len(work)
    results: list[R] = []
    if jobs <= 1 or total <= 1:
        for item in work:
            results.append(fn(item))
            if progress:
                progress(len(results), total)
        return results

    workers = min(jobs, total)
    logger.debug("dispatching %d jobs to %d worker processes", total, workers)
    with multiprocessing.Pool(workers) as pool:
        for out in pool.imap(fn, work):
            results.append(out)
            if progress:
                progress(len(results), total)
    return results
