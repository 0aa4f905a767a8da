"""Deterministic worker-pool plumbing for the sweeps.

Work is split into ordered chunks up front; chunks may then be evaluated on a
thread pool, and results are always collected in submission order.  The worker
count can therefore never change a single output byte — it only changes which
thread happens to evaluate a chunk.  The pool size comes from the
NEIGHBORHOOD_BOUND_THREADS environment variable unless given explicitly.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

ENV_VAR = "NEIGHBORHOOD_BOUND_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def worker_count(explicit: Optional[int] = None) -> int:
    """The number of workers to use: explicit argument, else env var, else CPUs (capped at 8)."""
    if explicit is not None:
        if explicit < 1:
            raise ValueError(f"worker count must be positive, got {explicit}")
        return explicit
    raw = os.environ.get(ENV_VAR)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
        if value < 1:
            raise ValueError(f"{ENV_VAR} must be positive, got {value}")
        return value
    return min(8, os.cpu_count() or 1)


def map_chunked(
    fn: Callable[[T], R], tasks: Iterable[T], workers: Optional[int] = None
) -> list[R]:
    """Apply fn to every task, results in task order regardless of worker count."""
    items = list(tasks)
    count = worker_count(workers)
    if count <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=count) as pool:
        return list(pool.map(fn, items))
