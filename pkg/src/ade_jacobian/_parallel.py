"""Bounded, order-preserving parallel map.

``ADE_JACOBIAN_THREADS`` caps the number of worker threads.  Results are
always returned in input order, so output never depends on the cap.
"""
import os
from concurrent.futures import ThreadPoolExecutor

ENV_VAR = "ADE_JACOBIAN_THREADS"


def thread_cap():
    raw = os.environ.get(ENV_VAR)
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise ValueError(f"{ENV_VAR} must be a positive integer, got {raw!r}")
    return value


def ordered_map(fn, items):
    items = list(items)
    workers = min(thread_cap(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def chunked(seq, size):
    return [seq[i : i + size] for i in range(0, len(seq), size)]
