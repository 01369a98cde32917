# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Range partitioning and process-pool mapping for exhaustive sweeps."""

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Optional, Sequence

from loguru import logger


def partition_range(start: int, stop: int, chunk: int) -> list[tuple[int, int]]:
    """Split ``[start, stop)`` into consecutive half-open chunks.

    Args:
        start: First index
        stop: One past the last index
        chunk: Largest chunk length (values below 1 are treated as 1)

    Returns:
        List of ``(lo, hi)`` pairs covering the range in order
    """
    chunk = max(1, int(chunk))
    return [(lo, min(lo + chunk, stop)) for lo in range(start, stop, chunk)]


def map_tasks(
    func: Callable[..., Any],
    tasks: Sequence[tuple[Any, ...]],
    threads: int = 1,
    on_done: Optional[Callable[[Any], None]] = None,
) -> list[Any]:
    """Apply ``func`` to every argument tuple, preserving task order.

    With ``threads > 1`` the tasks run in a process pool; ``func`` must then be
    a module-level function and its arguments picklable.

    Args:
        func: Worker function
        tasks: Argument tuples, one per call
        threads: Worker process count
        on_done: Optional callback invoked with each result as it is collected

    Returns:
        Results in task order
    """
    results: list[Any] = []
    if threads <= 1 or len(tasks) <= 1:
        for task in tasks:
            result = func(*task)
            if on_done is not None:
                on_done(result)
            results.append(result)
        return results

    workers = min(threads, len(tasks))
    logger.debug(f"Dispatching {len(tasks)} tasks to {workers} worker processes")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        for result in executor.map(func, *zip(*tasks)):
            if on_done is not None:
                on_done(result)
            results.append(result)
    return results
