"""Pareto inter-event laws and the geometric-mean law built from two of them.

All evaluators accept scalars or numpy arrays and broadcast. Support
membership uses a closed left endpoint, ``x >= alpha``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

WHICH_PARETO = ("density", "survivor", "hazard")
WHICH_G12 = ("survivor", "q12_density", "p12_density")


def _out(values, x):
    return float(values) if np.ndim(x) == 0 else values


@dataclass(frozen=True)
class ParetoClass:
    """Pareto law on ``[alpha, inf)`` with tail index ``beta``."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not (np.isfinite(self.beta) and self.beta > 0):
            raise DomainError(f"beta must be positive, got {self.beta}")

    def hazard(self, x):
        x = np.asarray(x, dtype=float)
        inside = x >= self.alpha
        safe = np.where(inside, x, self.alpha)
        return _out(np.where(inside, self.beta / safe, 0.0), x)

    def survivor(self, x):
        x = np.asarray(x, dtype=float)
        inside = x >= self.alpha
        safe = np.where(inside, x, self.alpha)
        return _out(np.where(inside, (self.alpha / safe) ** self.beta, 1.0), x)

    def density(self, x):
        x = np.asarray(x, dtype=float)
        inside = x >= self.alpha
        safe = np.where(inside, x, self.alpha)
        # hazard * survivor, so the hazard relation holds to rounding
        dens = (self.beta / safe) * (self.alpha / safe) ** self.beta
        return _out(np.where(inside, dens, 0.0), x)

    def cdf(self, x):
        return _out(1.0 - np.asarray(self.survivor(x)), x)

    def log_density(self, x):
        """``ln p(x)``; ``-inf`` below the support."""
        x = np.asarray(x, dtype=float)
        inside = x >= self.alpha
        safe = np.where(inside, x, self.alpha)
        val = (np.log(self.beta) + self.beta * np.log(self.alpha)
               - (self.beta + 1.0) * np.log(safe))
        return _out(np.where(inside, val, -np.inf), x)

    def log_survivor(self, x):
        x = np.asarray(x, dtype=float)
        inside = x >= self.alpha
        safe = np.where(inside, x, self.alpha)
        return _out(np.where(inside, self.beta * (np.log(self.alpha) - np.log(safe)), 0.0), x)

    def quantile(self, u):
        """Inverse CDF, ``alpha * (1 - u) ** (-1 / beta)`` for ``u`` in [0, 1)."""
        u = np.asarray(u, dtype=float)
        if np.any((u < 0.0) | (u >= 1.0)) or np.any(np.isnan(u)):
            raise DomainError("pareto quantile needs u in [0, 1)")
        return _out(self.alpha * (1.0 - u) ** (-1.0 / self.beta), u)

    def sample_iet(self, u):
        """Map a stream uniform in [0, 1) to an inter-event time (CDF inversion)."""
        return self.alpha * (1.0 - u) ** (-1.0 / self.beta)


def pareto_eval(c: ParetoClass, x, which: str = "density"):
    if which not in WHICH_PARETO:
        raise ValueError(f"which must be one of {WHICH_PARETO}, got {which!r}")
    return getattr(c, which)(x)


def pareto_quantile(c: ParetoClass, u):
    return c.quantile(u)


def canonical_order(a: ParetoClass, b: ParetoClass) -> tuple[ParetoClass, ParetoClass, bool]:
    """Order two classes so the first has the smaller scale; report a swap."""
    if a.alpha > b.alpha:
        return b, a, True
    return a, b, False


@dataclass(frozen=True)
class GeomMeanLaw:
    """Renewal law with survivor ``sqrt(S1 * S2)``.

    Its density ``q12 = (h1 + h2) / 2 * G12`` is the importance-sampling
    proposal for the Bhattacharyya integral; ``p12 = sqrt(p1 * p2)`` is the
    defective density with mass equal to the Bhattacharyya coefficient.
    Classes given in either order are stored with ``c1.alpha <= c2.alpha``.
    """

    c1: ParetoClass
    c2: ParetoClass
    swapped: bool = field(default=False, compare=False)
    alpha_geo: float = field(init=False)
    beta_bar: float = field(init=False)
    breakpoint_u: float = field(init=False)

    def __post_init__(self):
        c1, c2, swapped = canonical_order(self.c1, self.c2)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)
        object.__setattr__(self, "swapped", self.swapped or swapped)
        object.__setattr__(self, "alpha_geo",
                           c1.alpha ** (c1.beta / 2) * c2.alpha ** (c2.beta / 2))
        object.__setattr__(self, "beta_bar", 0.5 * (c1.beta + c2.beta))
        object.__setattr__(self, "breakpoint_u", (c1.alpha / c2.alpha) ** (c1.beta / 2))

    def survivor(self, x):
        x = np.asarray(x, dtype=float)
        a1, a2 = self.c1.alpha, self.c2.alpha
        safe = np.where(x >= a1, x, a1)
        mid = (a1 / safe) ** (self.c1.beta / 2)
        # equals alpha_geo * x**-beta_bar; anchored at alpha2 so continuity is exact
        tail = self.breakpoint_u * (a2 / np.maximum(safe, a2)) ** self.beta_bar
        return _out(np.where(x < a1, 1.0, np.where(x < a2, mid, tail)), x)

    def q12_density(self, x):
        x = np.asarray(x, dtype=float)
        rate = 0.5 * (np.asarray(self.c1.hazard(x)) + np.asarray(self.c2.hazard(x)))
        return _out(rate * np.asarray(self.survivor(x)), x)

    def p12_density(self, x):
        x = np.asarray(x, dtype=float)
        return _out(np.sqrt(np.asarray(self.c1.density(x)) * np.asarray(self.c2.density(x))), x)

    def survivor_quantile(self, u):
        """Solve ``G12(x) = u`` for ``u`` in (0, 1]."""
        u = np.asarray(u, dtype=float)
        if np.any((u <= 0.0) | (u > 1.0)) or np.any(np.isnan(u)):
            raise DomainError("g12 quantile needs u in (0, 1]")
        return _out(self._invert(u), u)

    def _invert(self, u):
        mid = self.c1.alpha * u ** (-2.0 / self.c1.beta)
        tail = self.c2.alpha * (self.breakpoint_u / u) ** (1.0 / self.beta_bar)
        # the tail branch returns alpha2 exactly at the breakpoint
        return np.where(u > self.breakpoint_u, mid, tail)

    def sample_iet(self, u):
        """Map a stream uniform in [0, 1) to an IET by survivor inversion at ``1 - u``."""
        return self._invert(1.0 - u)

    def coefficient(self) -> float:
        """Bhattacharyya coefficient ``c12 = delta * theta ** beta1``."""
        return bhatt_coefficient(self)


def g12_eval(law: GeomMeanLaw, x, which: str = "survivor"):
    if which not in WHICH_G12:
        raise ValueError(f"which must be one of {WHICH_G12}, got {which!r}")
    return getattr(law, which)(x)


def g12_quantile(law: GeomMeanLaw, u):
    return law.survivor_quantile(u)


def bhatt_coefficient(law: GeomMeanLaw) -> float:
    gamma = law.c1.beta / law.c2.beta
    delta = 2.0 * np.sqrt(gamma) / (1.0 + gamma)
    return float(delta * law.breakpoint_u)


def integrate_with_tail(law: GeomMeanLaw, which: str, x_max_factor: float = 1e4) -> float:
    """Integral of ``q12`` or ``p12`` over [0, inf) for cross-checks.

    Adaptive quadrature on ``[alpha1, alpha2]`` and ``[alpha2, X]`` plus the
    exact power-law remainder beyond ``X = x_max_factor * alpha2``.
    """
    from scipy.integrate import quad

    if which not in ("q12_density", "p12_density"):
        raise ValueError(f"cannot integrate {which!r}")
    f = getattr(law, which)
    a1, a2 = law.c1.alpha, law.c2.alpha
    x_max = x_max_factor * a2
    total = 0.0
    if a2 > a1:
        total += quad(f, a1, a2, epsabs=1e-13, epsrel=1e-12, limit=200)[0]
    # substitute x = exp(s) to tame the heavy tail
    total += quad(lambda s: f(np.exp(s)) * np.exp(s), np.log(a2), np.log(x_max),
                  epsabs=1e-13, epsrel=1e-12, limit=400)[0]
    if which == "q12_density":
        tail = float(law.survivor(x_max))
    else:
        b1, b2 = law.c1.beta, law.c2.beta
        tail = math.sqrt(b1 * b2) * law.alpha_geo * x_max ** (-law.beta_bar) / law.beta_bar
    return total + tail
