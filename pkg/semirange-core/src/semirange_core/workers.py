import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

logger = logging.getLogger(__name__)

TItem = TypeVar("TItem")
TResult = TypeVar("TResult")


def parallel_map(
    fn: Callable[[TItem], TResult],
    items: Iterable[TItem],
    max_workers: int | None = None,
) -> list[TResult]:
    """Applies ``fn`` to every item and returns the results in input order.

    Runs inline when ``max_workers`` is 1 or there is at most one item.
    """
    items = list(items)
    if max_workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]

    logger.debug("Dispatching %d tasks to a pool of %s workers", len(items), max_workers or "default")
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(fn, items))
