"""Chunked Monte-Carlo execution with worker-count-independent results.

Realizations are split into fixed-size chunks (the split never depends on
the number of workers). Each chunk returns a partial summary and partials
are folded in chunk order, so a run is bitwise reproducible for any
``workers`` value.
"""
from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

CHUNK_SIZE = 1 << 16


@dataclass(frozen=True)
class McEstimate:
    """A Monte-Carlo estimate with its standard error and provenance."""

    value: float
    std_err: float
    m_total: int
    m_contributing: int
    seed: int

    @property
    def rel_err(self) -> float:
        return self.std_err / self.value if self.value > 0 else math.inf


@dataclass(frozen=True)
class Moments:
    """Count, sum and centred second moment of a batch of weights."""

    count: int
    total: float
    m2: float
    nonzero: int

    @property
    def mean(self) -> float:
        return self.total / self.count if self.count else 0.0

    def merge(self, other: "Moments") -> "Moments":
        if not self.count:
            return other
        if not other.count:
            return self
        n = self.count + other.count
        d = other.mean - self.mean
        m2 = self.m2 + other.m2 + d * d * self.count * other.count / n
        return Moments(n, self.total + other.total, m2, self.nonzero + other.nonzero)


def chunk_bounds(m: int, size: int = CHUNK_SIZE) -> list[tuple[int, int]]:
    return [(lo, min(lo + size, m)) for lo in range(0, m, size)]


def map_chunks(fn: Callable, args: Sequence, m: int, workers: int = 1) -> list:
    """Evaluate ``fn(*args, start, stop)`` over all chunks, results in chunk order."""
    bounds = chunk_bounds(m)
    if workers <= 1 or len(bounds) <= 1:
        return [fn(*args, lo, hi) for lo, hi in bounds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *args, lo, hi) for lo, hi in bounds]
        return [f.result() for f in futures]


def fold(parts: Sequence[Moments]) -> Moments:
    acc = Moments(0, 0.0, 0.0, 0)
    for part in parts:
        acc = acc.merge(part)
    return acc
