"""Order-preserving map over worker processes."""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator


def default_workers() -> int:
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:
        return os.cpu_count() or 1


def ordered_map(fn: Callable, tasks: Iterable[tuple], workers: int = 1) -> Iterator:
    """
    Yield ``fn(*task)`` for each task, in task order.

    With ``workers > 1`` tasks run in a process pool with at most
    ``2 * workers`` in flight; results are still yielded in submission
    order, so a consumer can stop early without seeing later ranges.
    """
    if workers <= 1:
        for task in tasks:
            yield fn(*task)
        return

    pending = deque()
    it = iter(tasks)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        try:
            for task in it:
                pending.append(pool.submit(fn, *task))
                if len(pending) >= 2 * workers:
                    break
            while pending:
                result = pending.popleft().result()
                for task in it:
                    pending.append(pool.submit(fn, *task))
                    break
                yield result
        finally:
            for fut in pending:
                fut.cancel()
