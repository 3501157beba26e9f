"""Renewal trajectories on (0, T]: simulation and hybrid log-likelihood."""
from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .distributions import ParetoClass
from .rng import RngStream


@dataclass(frozen=True)
class Trajectory:
    """Event times ``0 < t_1 < ... < t_n <= horizon``; ``n = 0`` allowed."""

    horizon: float
    event_times: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.horizon > 0:
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        times = tuple(float(t) for t in self.event_times)
        prev = 0.0
        for t in times:
            if not prev < t:
                raise ValueError("event times must be positive and strictly increasing")
            prev = t
        if times and times[-1] > self.horizon:
            raise ValueError("event times must not exceed the horizon")
        object.__setattr__(self, "event_times", times)

    @property
    def n(self) -> int:
        return len(self.event_times)

    def iets(self) -> np.ndarray:
        """Inter-event times ``t_r - t_{r-1}`` with ``t_0 = 0``."""
        return np.diff(np.concatenate(([0.0], self.event_times)))

    def censored(self) -> float:
        """Time from the last event (or 0) to the horizon."""
        return self.horizon - (self.event_times[-1] if self.event_times else 0.0)


def simulate_trajectory(quantile: Callable[[float], float], T: float,
                        stream: RngStream) -> Trajectory:
    """Draw IETs by inverse transform until the next event would pass ``T``.

    ``quantile`` maps a stream uniform in [0, 1) to an inter-event time
    (e.g. ``ParetoClass.sample_iet``). The overshooting draw is discarded;
    an event landing exactly on ``T`` is kept.
    """
    if not T > 0:
        raise ValueError(f"T must be positive, got {T}")
    times = []
    t = 0.0
    while True:
        t_next = t + float(quantile(stream.uniform()))
        if t_next > T:
            return Trajectory(T, tuple(times))
        times.append(t_next)
        t = t_next


def log_likelihood(c: ParetoClass, traj: Trajectory) -> float:
    """``sum ln p(x_r) + ln S(T - t_n)``; ``-inf`` if any IET is off-support."""
    total = 0.0
    for x in traj.iets():
        if x < c.alpha:
            return -math.inf
        total += c.log_density(x)
    return total + c.log_survivor(traj.censored())


def likelihood(c: ParetoClass, traj: Trajectory) -> float:
    """Direct product form of the renewal likelihood (no logs)."""
    value = 1.0
    for x in traj.iets():
        value *= c.density(x)
    return value * c.survivor(traj.censored())


def event_counts(sample_iet: Callable, T: float, keys: np.ndarray) -> np.ndarray:
    """Number of events in (0, T] for each stream key, vectorized.

    Draw ``k`` of realization ``r`` is identical to what
    ``simulate_trajectory`` sees on the same stream.
    """
    from .rng import uniforms

    counts = np.zeros(keys.size, dtype=np.int64)
    idx = np.arange(keys.size)
    t = np.zeros(keys.size)
    k = 0
    while idx.size:
        t = t + sample_iet(uniforms(keys, k))
        keep = t <= T
        counts[idx[keep]] += 1
        idx, t, keys = idx[keep], t[keep], keys[keep]
        k += 1
    return counts
