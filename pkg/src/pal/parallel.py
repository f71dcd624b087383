"""PAL_THREADS-capped map over independent checks.

All operations are pure, so data parallelism is safe; results are returned
in input order, keeping every report deterministic regardless of schedule.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_cap() -> int:
    raw = os.environ.get("PAL_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def pmap(fn, items):
    items = list(items)
    cap = thread_cap()
    if cap == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(cap, len(items))) as pool:
        return list(pool.map(fn, items))
