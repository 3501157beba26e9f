"""Bayes (likelihood) classification of renewal trajectories and Monte-Carlo error rates."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import ClassPair
from .errors import DomainError
from .montecarlo import McEstimate, map_chunks
from .renewal import Trajectory, log_likelihood
from .rng import CTX_PE, derive_path, realization_keys, uniforms


@dataclass(frozen=True)
class ClassificationResult:
    label: int
    log_posterior_margin: float
    tie: bool


def _tie_label(pair: ClassPair) -> int:
    """Canonical label chosen on a tie: larger prior, then the caller's class 1."""
    if pair.pi1 != pair.pi2:
        return 1 if pair.pi1 > pair.pi2 else 2
    return 2 if pair.swapped else 1


def _external(pair: ClassPair, label: int) -> int:
    return 3 - label if pair.swapped else label


def classify_trajectory(pair: ClassPair, traj: Trajectory) -> ClassificationResult:
    """Assign the label maximizing ``ln pi_k + ln L_k``.

    Labels and the margin refer to the caller's original class order, even
    when the pair was canonicalized internally.
    """
    s1 = math.log(pair.pi1) + log_likelihood(pair.c1, traj)
    s2 = math.log(pair.pi2) + log_likelihood(pair.c2, traj)
    if s1 == s2:
        label, margin, tie = _tie_label(pair), 0.0, True
    elif s1 == -math.inf or s2 == -math.inf:
        label = 1 if s1 > s2 else 2
        margin, tie = math.inf, False
    else:
        label = 1 if s1 > s2 else 2
        margin, tie = abs(s1 - s2), False
    return ClassificationResult(_external(pair, label), margin, tie)


def classify_paths(pair: ClassPair, k: int, T: float, keys: np.ndarray) -> np.ndarray:
    """Simulate class-``k`` (canonical) trajectories and return canonical labels.

    A path is settled as soon as the other class's likelihood hits zero;
    streams are counter-based, so stopping early changes no other draw.
    """
    src = pair.c1 if k == 1 else pair.c2
    c1, c2 = pair.c1, pair.c2
    m = keys.size
    labels = np.zeros(m, dtype=np.int8)
    idx = np.arange(m)
    t = np.zeros(m)
    ll1 = np.zeros(m)
    ll2 = np.zeros(m)
    lp = math.log(pair.pi1) - math.log(pair.pi2)
    tie = _tie_label(pair)
    other_min = c2.alpha if k == 1 else c1.alpha
    step = 0
    while idx.size:
        x = src.sample_iet(uniforms(keys, step))
        t_next = t + x
        done = t_next > T
        if done.any():
            y = T - t[done]
            margin = (lp + ll1[done] + c1.log_survivor(y)) - (ll2[done] + c2.log_survivor(y))
            labels[idx[done]] = np.where(margin > 0, 1, np.where(margin < 0, 2, tie))
        live = ~done
        settled = live & (x < other_min)
        if settled.any():
            labels[idx[settled]] = k
        keep = live & ~settled
        xk = x[keep]
        idx, t, keys = idx[keep], t_next[keep], keys[keep]
        ll1 = ll1[keep] + c1.log_density(xk)
        ll2 = ll2[keep] + c2.log_density(xk)
        step += 1
    return labels


def _pe_chunk(c1, c2, pi1, k, T, base_key, start, stop) -> int:
    pair = ClassPair(c1, c2, pi1)
    labels = classify_paths(pair, k, T, realization_keys(base_key, start, stop))
    return int(np.count_nonzero(labels != k))


def class_error_counts(pair: ClassPair, T: float, M_per_class: int, seed: int,
                       path: tuple[int, ...] = (), workers: int = 1) -> tuple[int, int]:
    """Misclassification counts for canonical classes 1 and 2."""
    counts = []
    for k in (1, 2):
        base_key = derive_path(seed, tuple(path) + (CTX_PE, k))
        parts = map_chunks(_pe_chunk, (pair.c1, pair.c2, pair.pi1, k, float(T), base_key),
                           M_per_class, workers)
        counts.append(sum(parts))
    return counts[0], counts[1]


def mc_error_prob(pair: ClassPair, T: float, M_per_class: int, seed: int,
                  path: tuple[int, ...] = (), workers: int = 1) -> McEstimate:
    """Prior-weighted Monte-Carlo misclassification rate of the Bayes classifier."""
    if not T > 0:
        raise DomainError(f"T must be positive, got {T}")
    if M_per_class < 1:
        raise DomainError(f"M_per_class must be at least 1, got {M_per_class}")
    e1, e2 = class_error_counts(pair, T, M_per_class, seed, path, workers)
    p1, p2 = e1 / M_per_class, e2 / M_per_class
    value = pair.pi1 * p1 + pair.pi2 * p2
    var = (pair.pi1 ** 2 * p1 * (1 - p1) + pair.pi2 ** 2 * p2 * (1 - p2)) / M_per_class
    return McEstimate(value, math.sqrt(var), 2 * M_per_class, e1 + e2, seed)
