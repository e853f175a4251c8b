"""A small ordered worker pool used to fan Monte Carlo trials out across threads."""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

_log: logging.Logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


# *** default_threads *******************************************************

def default_threads() -> int:
    """Return the default worker count, taken from INEXACTLAB_THREADS or the available parallelism.

    Returns:
        int: The default number of worker threads.
    """
    configured: Optional[str] = os.environ.get("INEXACTLAB_THREADS")
    if configured is not None and configured.isdigit() and int(configured) > 0:
        return int(configured)
    return os.cpu_count() or 1


# *** map_ordered ***********************************************************

def map_ordered(function: Callable[[T], R], items: Sequence[T], threads: int = 1) -> List[R]:
    """Apply a function to every item, possibly on a pool of worker threads, returning results in input order.

    Reductions over the returned list must be performed in list order so that results are identical for any thread count.

    Args:
        function (Callable[[T], R]): The function to apply.
        items (Sequence[T]): The items to apply the function to.
        threads (int, optional): The number of worker threads. Defaults to 1, which runs inline.

    Returns:
        List[R]: The results, in the order of the given items.
    """
    if threads <= 1 or len(items) <= 1:
        return [function(item) for item in items]

    workers: int = min(threads, len(items))
    _log.debug("Running %d tasks on %d worker threads", len(items), workers)
    with ThreadPoolExecutor(max_workers = workers) as executor:
        return list(executor.map(function, items))
