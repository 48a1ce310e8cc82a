"""Runtime knobs shared across modules."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    field_cap: int = 1 << 20
    full_scheme_verify: int = 2000  # |Omega| above this -> sampled tensor check
    scheme_samples: int = 64
    exhaustive_graph: int = 25_000
    matmul_oracle: int = 500
    canon_vertices: int = 5000
    aut_vertices: int = 2000
    semilinear_maps: int = 100_000


LIMITS = Limits()


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("SCHEME_FORGE_THREADS", "1")))
    except ValueError:
        return 1


def chunked_map(fn, chunks):
    """Map over chunks, in order; uses SCHEME_FORGE_THREADS worker threads."""
    chunks = list(chunks)
    workers = min(thread_count(), len(chunks)) or 1
    if workers == 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(fn, chunks))


def row_chunks(v: int, size: int = 64):
    return [range(i, min(i + size, v)) for i in range(0, v, size)]
