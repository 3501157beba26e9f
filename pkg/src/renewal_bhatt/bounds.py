"""Bhattacharyya bound for two Pareto renewal classes.

Three routes to ``B(T) = integral of sqrt(L1 * L2)`` over trajectories:

* ``asymptotic_bound``: closed-form large-``T`` asymptote;
* ``mc_bhatt``: importance sampling under the geometric-mean renewal law,
  where each realization carries weight ``delta ** n`` if every IET is at
  least ``alpha2`` and zero otherwise;
* ``oracle_bhatt``: the renewal series ``sum_n (p12^{*n} * G12)(T)``
  evaluated by trapezoidal convolution, usable for small ``T``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import fft as sfft

from .distributions import GeomMeanLaw, ParetoClass, bhatt_coefficient
from .errors import DegeneratePairError, DomainError
from .montecarlo import McEstimate, Moments, fold, map_chunks
from .rng import CTX_BHATT, derive, derive_path, realization_keys, uniforms

DEGENERACY_EPS = 1e-12
DEFAULT_ORACLE_K = 2000
_POW_SWITCH = 50


@dataclass(frozen=True)
class ClassPair:
    """Two classes with priors, stored in canonical order ``c1.alpha <= c2.alpha``.

    ``swapped`` records whether the caller's labels were exchanged to reach
    canonical order; classifiers map labels back through it.
    """

    c1: ParetoClass
    c2: ParetoClass
    pi1: float = 0.5
    pi2: float | None = None
    swapped: bool = field(default=False, init=False)

    def __post_init__(self):
        pi2 = 1.0 - self.pi1 if self.pi2 is None else self.pi2
        if not (0.0 < self.pi1 < 1.0 and 0.0 < pi2 < 1.0):
            raise DomainError("priors must lie in (0, 1)")
        if not math.isclose(self.pi1 + pi2, 1.0, rel_tol=0, abs_tol=1e-12):
            raise DomainError("priors must sum to 1")
        if self.c1.alpha > self.c2.alpha:
            c1, c2, pi1 = self.c2, self.c1, pi2
            pi2 = self.pi1
            object.__setattr__(self, "c1", c1)
            object.__setattr__(self, "c2", c2)
            object.__setattr__(self, "pi1", pi1)
            object.__setattr__(self, "swapped", not self.swapped)
        object.__setattr__(self, "pi2", pi2)

    @classmethod
    def from_unit_free(cls, alpha1: float, beta1: float, theta: float, gamma: float,
                       pi1: float = 0.5) -> "ClassPair":
        """Pair with ``alpha2 = alpha1 / theta**2`` and ``beta2 = beta1 / gamma``."""
        if not (0 < theta <= 1):
            raise DomainError(f"theta must lie in (0, 1], got {theta}")
        if not gamma > 0:
            raise DomainError(f"gamma must be positive, got {gamma}")
        return cls(ParetoClass(alpha1, beta1), ParetoClass(alpha1 / theta ** 2, beta1 / gamma), pi1)

    @property
    def law(self) -> GeomMeanLaw:
        return GeomMeanLaw(self.c1, self.c2)

    def identical(self) -> bool:
        return self.c1 == self.c2


@dataclass(frozen=True)
class DerivedParams:
    gamma: float
    theta: float
    beta1: float
    beta_bar: float
    alpha_geo: float
    delta: float
    c12: float
    rho: float


def derived_params(pair: ClassPair) -> DerivedParams:
    """Unit-free summary of a canonical pair."""
    c1, c2 = pair.c1, pair.c2
    gamma = c1.beta / c2.beta
    theta = math.sqrt(c1.alpha / c2.alpha)
    beta_bar = 0.5 * (c1.beta + c2.beta)
    delta = 2.0 * math.sqrt(gamma) / (1.0 + gamma)
    law = pair.law
    return DerivedParams(
        gamma=gamma,
        theta=theta,
        beta1=c1.beta,
        beta_bar=beta_bar,
        alpha_geo=law.alpha_geo,
        delta=delta,
        c12=bhatt_coefficient(law),
        rho=1.0 - beta_bar,
    )


def _check_degenerate(dp: DerivedParams):
    if dp.c12 >= 1.0 - DEGENERACY_EPS:
        raise DegeneratePairError(
            f"Bhattacharyya coefficient {dp.c12!r} is 1: classes coincide, B(T) does not decay")


def asymptotic_bound(dp: DerivedParams, alpha2: float, T: float) -> float:
    """Large-``T`` asymptote ``(T/alpha2)**-beta_bar * theta**beta1 / (1 - delta*theta**beta1)``."""
    _check_degenerate(dp)
    if not T > 0:
        raise DomainError(f"T must be positive, got {T}")
    tb = dp.theta ** dp.beta1
    value = (T / alpha2) ** (-dp.beta_bar) * tb / (1.0 - dp.delta * tb)
    general = asymptotic_bound_general(dp, T)
    assert math.isclose(value, general, rel_tol=1e-12), (value, general)
    return value


def asymptotic_bound_general(dp: DerivedParams, T: float) -> float:
    """Same asymptote in regular-variation form ``T**(rho-1) * alpha_geo / (1 - c12)``."""
    _check_degenerate(dp)
    return T ** (dp.rho - 1.0) * dp.alpha_geo / (1.0 - dp.c12)


def bhatt_error_bound(pair: ClassPair, B: float) -> float:
    """Upper bound ``sqrt(pi1 * pi2) * B`` on the Bayes error."""
    if not 0.0 <= B <= 1.0:
        raise DomainError(f"B must lie in [0, 1], got {B}")
    return math.sqrt(pair.pi1 * pair.pi2) * B


def delta_pow(delta: float, n):
    """``delta ** n``, switching to ``exp(n ln delta)`` for long paths."""
    n = np.asarray(n)
    if delta == 1.0:
        return np.ones(n.shape)
    direct = delta ** np.minimum(n, _POW_SWITCH).astype(float)
    return np.where(n > _POW_SWITCH, np.exp(n * math.log(delta)), direct)


def bhatt_weights(law: GeomMeanLaw, T: float, keys: np.ndarray,
                  early_stop: bool = True) -> np.ndarray:
    """Importance weight of each realization whose stream key is in ``keys``.

    Paths are drawn from the geometric-mean renewal law. A path is dropped
    as soon as an IET below ``alpha2`` lands inside (0, T]; with
    ``early_stop=False`` it keeps running to ``T`` instead (same weights).
    """
    m = keys.size
    a2 = law.c2.alpha
    gamma = law.c1.beta / law.c2.beta
    delta = 2.0 * math.sqrt(gamma) / (1.0 + gamma)
    weights = np.zeros(m)
    idx = np.arange(m)
    t = np.zeros(m)
    n = np.zeros(m, dtype=np.int64)
    ok = np.ones(m, dtype=bool)
    k_keys = keys
    k = 0
    while idx.size:
        x = law.sample_iet(uniforms(k_keys, k))
        t_next = t + x
        done = t_next > T
        if done.any():
            fin = idx[done]
            weights[fin] = np.where(ok[done], delta_pow(delta, n[done]), 0.0)
        keep = ~done
        short = x < a2
        if early_stop:
            keep &= ~short
        else:
            ok = ok & ~short
        idx, t, n, ok, k_keys = idx[keep], t_next[keep], n[keep] + 1, ok[keep], k_keys[keep]
        k += 1
    return weights


def _bhatt_chunk(c1, c2, T, base_key, early_stop, start, stop) -> Moments:
    law = GeomMeanLaw(c1, c2)
    w = bhatt_weights(law, T, realization_keys(base_key, start, stop), early_stop)
    mean = float(w.mean())
    return Moments(w.size, float(w.sum()), float(((w - mean) ** 2).sum()),
                   int(np.count_nonzero(w)))


def mc_bhatt(pair: ClassPair, T: float, M: int, seed: int, path: tuple[int, ...] = (),
             workers: int = 1, early_stop: bool = True) -> McEstimate:
    """Importance-sampling estimate of ``B(T)`` from ``M`` realizations.

    ``path`` labels the substream (the sweep passes the cell index).
    """
    if not T > 0:
        raise DomainError(f"T must be positive, got {T}")
    if M < 1:
        raise DomainError(f"M must be at least 1, got {M}")
    base_key = derive_path(seed, tuple(path) + (CTX_BHATT,))
    parts = map_chunks(_bhatt_chunk, (pair.c1, pair.c2, float(T), base_key, early_stop),
                       M, workers)
    acc = fold(parts)
    value = acc.total / M
    std_err = math.sqrt(acc.m2 / (M - 1)) / math.sqrt(M) if M > 1 else 0.0
    return McEstimate(value, std_err, M, acc.nonzero, seed)


def bhatt_stream_key(seed: int, path: tuple[int, ...], realization: int) -> int:
    """Stream key used by ``mc_bhatt`` for one realization."""
    return derive(derive_path(seed, tuple(path) + (CTX_BHATT,)), realization)


def piecewise_bhatt_small_t(pair: ClassPair, T: float) -> float:
    """Exact ``B(T)`` for ``T < alpha2 + alpha1`` by analytic integration.

    In that range at most one event fits with every IET >= ``alpha2`` and
    the censored interval after it is shorter than ``alpha1``, so
    ``B(T) = G12(T) + integral_{alpha2}^{T} p12(x) dx``.
    """
    law = pair.law
    a1, a2 = law.c1.alpha, law.c2.alpha
    if T >= a1 + a2:
        raise DomainError("closed form only valid for T < alpha1 + alpha2")
    value = float(law.survivor(T))
    if T > a2:
        b1, b2 = law.c1.beta, law.c2.beta
        const = math.sqrt(b1 * b2 * a1 ** b1 * a2 ** b2)
        bb = law.beta_bar
        value += const / bb * (a2 ** (-bb) - T ** (-bb))
    return value


def _renewal_density(p: np.ndarray, h: float, k: int) -> np.ndarray:
    """``sum_{n>=1} p^{*n}`` on the grid, truncated to ``p.size`` nodes."""
    size = p.size
    nfft = sfft.next_fast_len(2 * size)
    p_hat = sfft.rfft(p, nfft)
    term = p.copy()
    total = p.copy()
    n = 1
    while (n + 1) * k < size:
        n += 1
        term = sfft.irfft(sfft.rfft(term, nfft) * p_hat, nfft)[:size] * h
        # p^{*n} vanishes below n * alpha2
        term[: n * k] = 0.0
        total += term
    return total


def _oracle_grid(pair: ClassPair, T: float, grid_step: float | None, k: int):
    law = pair.law
    a2 = law.c2.alpha
    if grid_step is not None:
        if grid_step > a2 / 100 * (1 + 1e-12):
            raise DomainError(f"grid step {grid_step} coarser than alpha2/100")
        k = max(100, int(round(a2 / grid_step)))
    if k < 100:
        raise DomainError(f"K={k} gives a step coarser than alpha2/100")
    return law, a2 / k, k


def oracle_bhatt(pair: ClassPair, T: float, grid_step: float | None = None,
                 k: int = DEFAULT_ORACLE_K) -> float:
    """Renewal-series value of ``B(T)`` by trapezoidal convolution.

    The grid step is ``alpha2 / k`` (a requested ``grid_step`` is rounded
    to the nearest such value) so the jump of ``p12`` at ``alpha2`` sits on
    a node, where the right limit gets half weight.
    """
    if not T > 0:
        raise DomainError(f"T must be positive, got {T}")
    law, h, k = _oracle_grid(pair, T, grid_step, k)
    if T < law.c2.alpha:
        return float(law.survivor(T))
    n_nodes = int(math.floor(T / h)) + 2
    x = np.arange(n_nodes) * h
    p = np.asarray(law.p12_density(x))
    p[k] *= 0.5
    dens = _renewal_density(p, h, k)
    j = n_nodes - 2
    d = T - x[j]
    g = np.asarray(law.survivor(T - x[: j + 1]))
    w = np.full(j + 1, h)
    w[0] = w[j] = 0.5 * h
    integral = float(np.dot(w * dens[: j + 1], g))
    if d > 0:
        r_t = dens[j] + (dens[j + 1] - dens[j]) * d / h
        integral += 0.5 * d * (dens[j] * g[j] + r_t)
    return float(law.survivor(T)) + integral


def oracle_bhatt_curve(pair: ClassPair, T: float, k: int = DEFAULT_ORACLE_K):
    """Oracle ``B`` at every grid node in [0, T]; returns ``(times, values)``."""
    law, h, k = _oracle_grid(pair, T, None, k)
    n_nodes = int(math.floor(T / h)) + 1
    x = np.arange(n_nodes) * h
    g = np.asarray(law.survivor(x))
    if n_nodes <= k:
        return x, g
    p = np.asarray(law.p12_density(x))
    p[k] *= 0.5
    dens = _renewal_density(p, h, k)
    nfft = sfft.next_fast_len(2 * n_nodes)
    conv = sfft.irfft(sfft.rfft(dens, nfft) * sfft.rfft(g, nfft), nfft)[:n_nodes] * h
    # trapezoid end corrections: dens[0] = 0, g[0] = 1
    conv -= 0.5 * h * dens
    conv[:k] = 0.0
    return x, g + conv
