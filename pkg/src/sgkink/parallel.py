"""Ordered fan-out over independent grid points."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def ordered_map(fn, tasks, jobs: int = 1) -> list:
    """``[fn(t) for t in tasks]``, optionally spread over ``jobs`` processes.

    Results always come back in task order, so merged output is deterministic.
    """
    tasks = list(tasks)
    if jobs is None or jobs <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
