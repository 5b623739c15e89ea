"""Deterministic chunked Monte Carlo driver.

Repetitions are split into fixed-size chunks; chunk ``c`` of seed ``s``
always draws from ``SeedSequence(s, spawn_key=(c,))``, so the estimate is
a pure function of (seed, reps) no matter how chunks are scheduled.
Parallelism is opt-in through the RBEL_THREADS environment variable and
never changes the result: chunk counts are reduced in index order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ValidationError

CHUNK = 1 << 16


def _thread_count() -> int:
    raw = os.environ.get("RBEL_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


@dataclass(frozen=True)
class MCEstimate:
    """A Monte Carlo proportion with its binomial standard error."""

    estimate: float
    std_error: float
    reps: int
    seed: int


def bernoulli_mc(
    reps: int, seed: int, chunk_hits: Callable[[np.random.Generator, int], int]
) -> MCEstimate:
    """Estimate a probability as a mean of indicator draws.

    ``chunk_hits(rng, count)`` must return how many of ``count`` draws hit
    the event, using only ``rng`` for randomness.
    """
    if not isinstance(reps, (int, np.integer)) or reps < 1:
        raise ValidationError("bernoulli_mc: reps must be a positive integer")
    sizes = [CHUNK] * (reps // CHUNK)
    if reps % CHUNK:
        sizes.append(reps % CHUNK)

    def run(index_size: tuple[int, int]) -> int:
        index, size = index_size
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
        return int(chunk_hits(rng, size))

    jobs = list(enumerate(sizes))
    threads = _thread_count()
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(run, jobs))
    else:
        counts = [run(job) for job in jobs]

    hits = sum(counts)
    p = hits / reps
    se = math.sqrt(max(p * (1.0 - p), 0.0) / reps)
    return MCEstimate(estimate=p, std_error=se, reps=int(reps), seed=int(seed))
