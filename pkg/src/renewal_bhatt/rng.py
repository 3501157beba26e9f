"""Counter-based random streams.

Every realization owns an independent SplitMix64 sequence whose starting
state is derived from ``(seed, *path, realization_index)``. The ``k``-th
uniform of a realization is a pure function of that state and ``k``, so
realizations can be generated in any order, vectorized, split across
workers or abandoned early without changing any other draw.

Scalar (Python int) and vectorized (numpy uint64) code paths produce
identical bits.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_INV_2_53 = 2.0 ** -53

# context labels keep estimator substreams disjoint
CTX_BHATT = 0xB4A7
CTX_PE = 0x9E00


def mix64(z: int) -> int:
    """SplitMix64 output finalizer on a Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def derive(key: int, label: int) -> int:
    """Child key of ``key`` for the context ``label``."""
    return mix64((key & MASK64) ^ mix64(((label + 1) * GOLDEN_GAMMA) & MASK64))


def derive_path(seed: int, path: Iterable[int]) -> int:
    key = mix64(seed & MASK64)
    for label in path:
        key = derive(key, int(label))
    return key


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(_M1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def realization_keys(base_key: int, start: int, stop: int) -> np.ndarray:
    """Keys ``derive(base_key, r)`` for ``r`` in ``range(start, stop)``."""
    with np.errstate(over="ignore"):
        labels = np.arange(start, stop, dtype=np.uint64) + np.uint64(1)
        inner = _mix64_array(labels * np.uint64(GOLDEN_GAMMA))
        return _mix64_array(np.uint64(base_key & MASK64) ^ inner)


def uniforms(keys: np.ndarray, k: int) -> np.ndarray:
    """The ``k``-th uniform in [0, 1) of each stream in ``keys``."""
    step = np.uint64(((k + 1) * GOLDEN_GAMMA) & MASK64)
    with np.errstate(over="ignore"):
        bits = _mix64_array(keys + step)
    return (bits >> np.uint64(11)).astype(np.float64) * _INV_2_53


class RngStream:
    """Sequential view of one realization's stream.

    The stream is fully determined by ``seed`` and ``path``; two objects
    built from the same pair emit bitwise-identical uniforms. Not safe to
    share between threads (it carries a draw counter).
    """

    def __init__(self, seed: int, path: Sequence[int] = ()):
        self.seed = int(seed) & MASK64
        self.path = tuple(int(p) for p in path)
        if not self.path:
            self.key = derive_path(self.seed, ())
        else:
            self.key = derive(derive_path(self.seed, self.path[:-1]), self.path[-1])
        self.position = 0

    def uniform(self) -> float:
        """Next uniform in [0, 1)."""
        bits = mix64(self.key + (self.position + 1) * GOLDEN_GAMMA)
        self.position += 1
        return (bits >> 11) * _INV_2_53
