"""Instant anchor checks, run by ``renewal-bhatt selftest``."""
from __future__ import annotations


import numpy as np

from .bounds import (ClassPair, asymptotic_bound, asymptotic_bound_general, derived_params,
                     mc_bhatt, oracle_bhatt, oracle_bhatt_curve, piecewise_bhatt_small_t)
from .classify import mc_error_prob
from .distributions import ParetoClass, integrate_with_tail
from .errors import DegeneratePairError
from .sweep import log_axis

PAIR_A = ((10.0, 1.0), (20.0, 2.0))


def _pair_a():
    return ClassPair(ParetoClass(*PAIR_A[0]), ParetoClass(*PAIR_A[1]))


def _b_star(theta, gamma, T=2e4):
    pair = ClassPair.from_unit_free(10.0, 1.0, theta, gamma)
    return asymptotic_bound(derived_params(pair), pair.c2.alpha, T)


def check_anchor_smallest():
    b = _b_star(2 ** -0.5, 0.5)
    ok = float(f"{b:.5g}") == 6.7082e-5 and abs(b / 6.7e-5 - 1) <= 0.02
    return ok, f"B*={b!r} (want 6.7082e-05, paper 6.7e-05 within 2%)"


def check_anchor_largest():
    b = _b_star(2 ** -0.1, 2.0)
    return abs(b - 0.02872) <= 1e-5, f"B*={b!r} (want 0.02872 +/- 1e-05)"


def check_oracle_small_t():
    pair = _pair_a()
    want = {5.0: 1.0, 15.0: 0.81650, 25.0: 0.69559}
    got = {T: oracle_bhatt(pair, T) for T in want}
    exact = {T: piecewise_bhatt_small_t(pair, T) for T in want}
    ok = all(abs(got[T] - want[T]) <= 1e-3 and abs(got[T] - exact[T]) <= 1e-3 for T in want)
    return ok, " ".join(f"B({T:g})={got[T]:.6f}" for T in want)


def check_regimes():
    gammas = log_axis(0.5, 2.0, 5)
    bars = [0.5 * (1 + 1 / g) for g in gammas]
    want = [1.5, 1.207, 1.0, 0.853, 0.75]
    ok = all(abs(b - w) < 1e-3 for b, w in zip(bars, want))
    ok &= any(b < 1 for b in bars) and any(abs(b - 1) < 1e-12 for b in bars) and any(b > 1 for b in bars)
    return ok, "beta_bar=" + ",".join(f"{b:.3f}" for b in sorted(bars))


def check_lemma_b():
    law = _pair_a().law
    x = np.geomspace(law.c1.alpha / 2, 1e6 * law.c2.alpha, 4001)
    ok = bool(np.all(law.p12_density(x) <= law.q12_density(x)))
    return ok, "p12 <= q12 on log grid"


def check_quantiles():
    u = np.arange(1000) / 1000  # [0, 1) for the CDF inverse
    v = 1.0 - u  # (0, 1] for the survivor inverse
    c = ParetoClass(10.0, 1.0)
    law = _pair_a().law
    e1 = np.max(np.abs(c.cdf(c.quantile(u)) - u))
    e2 = np.max(np.abs(law.survivor(law.survivor_quantile(v)) - v))
    return max(e1, e2) <= 1e-12, f"max round-trip error {max(e1, e2):.2e}"


def check_normalization():
    law = _pair_a().law
    q = integrate_with_tail(law, "q12_density")
    p = integrate_with_tail(law, "p12_density")
    ok = abs(q - 1) <= 1e-6 and abs(p - law.coefficient()) <= 1e-6
    return ok, f"int q12={q:.9f} int p12={p:.9f} c12={law.coefficient():.9f}"


def check_oracle_monotone():
    _, b = oracle_bhatt_curve(_pair_a(), 100.0, k=500)
    return bool(b[0] == 1.0 and np.all(np.diff(b) <= 1e-12)), f"B(100)={b[-1]:.6f}"


def check_theta_monotone():
    thetas = np.linspace(0.3, 0.99, 30)
    vals = []
    for th in thetas:
        pair = ClassPair(ParetoClass(20.0 * th ** 2, 1.0), ParetoClass(20.0, 2.0))
        vals.append(asymptotic_bound(derived_params(pair), 20.0, 1e3))
    return bool(np.all(np.diff(vals) > 0)), "B* increasing along theta grid"


def check_two_forms():
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(200):
        a1, b1, b2 = rng.uniform(0.5, 50), rng.uniform(0.2, 3), rng.uniform(0.2, 3)
        a2 = a1 * rng.uniform(1.01, 10)
        dp = derived_params(ClassPair(ParetoClass(a1, b1), ParetoClass(a2, b2)))
        T = a2 * rng.uniform(1, 1e4)
        f1 = asymptotic_bound(dp, a2, T)
        worst = max(worst, abs(f1 / asymptotic_bound_general(dp, T) - 1))
    return worst <= 1e-12, f"max rel diff {worst:.1e}"


def check_degenerate():
    pair = ClassPair(ParetoClass(10.0, 1.0), ParetoClass(10.0, 1.0))
    try:
        asymptotic_bound(derived_params(pair), 10.0, 100.0)
        raised = False
    except DegeneratePairError:
        raised = True
    b = mc_bhatt(pair, 200.0, 2000, seed=1)
    pe = mc_error_prob(pair, 200.0, 2000, seed=1)
    ok = raised and b.value == 1.0 and b.std_err == 0.0 and pe.value == 0.5
    return ok, f"asymptote raises={raised} B_hat={b.value} Pe_hat={pe.value}"


CHECKS = [
    ("1 closed-form anchor B*(2e4) smallest cell", check_anchor_smallest),
    ("2 closed-form anchor B*(2e4) largest cell", check_anchor_largest),
    ("3 oracle small-T values", check_oracle_small_t),
    ("7 default gamma axis spans the three regimes", check_regimes),
    ("8 Lemma-B inequality", check_lemma_b),
    ("8 quantile round-trips", check_quantiles),
    ("8 q12/p12 normalization", check_normalization),
    ("8 oracle monotone in T", check_oracle_monotone),
    ("8 B* increasing in theta", check_theta_monotone),
    ("8 asymptote two-form equality", check_two_forms),
    ("8 identical-class degeneracy", check_degenerate),
]


def run_selftest(echo=print) -> bool:
    all_ok = True
    for name, check in CHECKS:
        try:
            ok, detail = check()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= ok
        echo(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return all_ok
