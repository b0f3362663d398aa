"""Thread-pool fan-out for independent work units.

The heavy kernels run under nogil numba code, so threads give real
parallelism. Results are always reduced in submission-index order; the worker
count therefore never affects output values.
"""

import os
from concurrent.futures import ThreadPoolExecutor

ENV_VAR = "PHOTON_LATTICE_THREADS"


def worker_count():
    raw = os.environ.get(ENV_VAR, "").strip()
    if raw:
        n = int(raw)
        if n > 0:
            return n
    return os.cpu_count() or 1


def pmap(fn, items):
    """Map fn over items; ordered results, exceptions returned in place."""
    items = list(items)
    n_workers = min(worker_count(), max(1, len(items)))
    if n_workers <= 1 or len(items) <= 1:
        return [_call(fn, it) for it in items]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        futures = [pool.submit(_call, fn, it) for it in items]
        return [f.result() for f in futures]


def _call(fn, item):
    try:
        return fn(item)
    except Exception as exc:  # noqa: BLE001 - unit failures are data here
        return exc
