from __future__ import annotations

import contextvars
import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from src.core.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")


def resolve_threads(threads: int | None, serial: bool = False) -> int:
    if serial:
        return 1
    value = settings.threads if threads is None else threads
    return max(1, int(value))


def block_ranges(count: int, blocks: int) -> list[range]:
    blocks = max(1, min(blocks, count)) if count else 1
    size, extra = divmod(count, blocks)
    ranges: list[range] = []
    start = 0
    for index in range(blocks):
        stop = start + size + (1 if index < extra else 0)
        ranges.append(range(start, stop))
        start = stop
    return ranges


def map_blocks(fn: Callable[[range], T], count: int, threads: int) -> list[T]:
    """Run ``fn`` over contiguous index blocks, in order, optionally on a thread pool.

    Each worker runs inside a copy of the caller's context so the cancel token
    installed by the watchdog is visible to every block.
    """
    ranges = block_ranges(count, threads)
    if threads <= 1 or len(ranges) <= 1:
        return [fn(block) for block in ranges]

    logger.debug("Dispatching %s blocks over %s threads", len(ranges), threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(contextvars.copy_context().run, fn, block) for block in ranges]
        return [future.result() for future in futures]
