# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Corpus batch runner.

Jobs are independent; results come back in submission order whatever the
worker count, so downstream reductions are deterministic. With one worker
jobs run in-process; otherwise they are dispatched to a process pool and
`activity_fn` must be a picklable top-level function.
"""

import asyncio
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, List, Optional, Protocol, Sequence, runtime_checkable

WORKERS_ENV = "GARMENTEX_WORKERS"


@runtime_checkable
class Runner(Protocol):
    async def run(self, *args, **kwargs):
        ...


def default_workers() -> int:
    try:
        return max(1, int(os.getenv(WORKERS_ENV, "1")))
    except ValueError:
        return 1


class Batch(Runner):
    def __init__(
        self,
        items: Sequence[Any],
        activity_fn: Callable[[Any], Any],
        workers: Optional[int] = None,
        post_item: Optional[Callable[[int, Any], None]] = None,
    ):
        self.items = list(items)
        self.activity_fn = activity_fn
        self.workers = workers if workers is not None else default_workers()
        self.post_item = post_item

    async def _in_process(self) -> List[Any]:
        results = []
        for index, item in enumerate(self.items):
            result = self.activity_fn(item)
            if asyncio.iscoroutine(result):
                result = await result
            if self.post_item:
                self.post_item(index, result)
            results.append(result)
        return results

    async def run(self) -> List[Any]:
        if self.workers <= 1 or len(self.items) <= 1:
            return await self._in_process()
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            futures = [loop.run_in_executor(pool, self.activity_fn, item) for item in self.items]
            results = await asyncio.gather(*futures)
        if self.post_item:
            for index, result in enumerate(results):
                self.post_item(index, result)
        return list(results)


def run_batch(items: Sequence[Any], activity_fn: Callable[[Any], Any],
              workers: Optional[int] = None) -> List[Any]:
    """Synchronous entry point for callers outside an event loop."""
    return asyncio.run(Batch(items, activity_fn, workers).run())
