"""First success in canonical order, optionally evaluated on a process pool."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import islice
from typing import Callable, Iterable, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def first_in_order(fn: Callable[[T], Optional[R]], items: Iterable[T], threads: int = 1,
                   batch: int = 256) -> Optional[tuple[T, R]]:
    """The earliest item (in iteration order) whose ``fn`` result is not None.

    With ``threads > 1`` items are evaluated in batches on worker processes;
    the answer does not depend on the worker count.
    """
    if threads <= 1:
        for item in items:
            res = fn(item)
            if res is not None:
                return item, res
        return None
    it = iter(items)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        while True:
            chunk = list(islice(it, batch))
            if not chunk:
                return None
            for item, res in zip(chunk, pool.map(fn, chunk, chunksize=max(1, batch // (4 * threads)))):
                if res is not None:
                    return item, res
