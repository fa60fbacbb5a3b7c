"""Shared oracles: deliberately literal re-implementations used to pin the
vectorized library code. Kept slow and explicit on purpose."""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def reference_local_search_m(sorted_scores, exp_eps, orientation):
    """Step-by-step transcription of the derivative search loop."""
    lam = np.asarray(sorted_scores, dtype=float)
    n = lam.size
    s = np.ones(n)
    s[0] = exp_eps
    m = 1
    for i in range(2, n + 1):
        numerator = float(np.sum((lam[i - 1] - lam) * s))
        favorable = numerator < 0.0 if orientation == "loss" else numerator > 0.0
        if not favorable:
            break
        s[i - 1] = exp_eps
        m = i
    return m


def reference_split_q(sorted_scores, exp_eps, m):
    """Expected score of the bipartite profile with split m, from scratch."""
    lam = np.asarray(sorted_scores, dtype=float)
    s = np.ones(lam.size)
    s[:m] = exp_eps
    w = s / s.sum()
    return float(np.sum(lam * w))


def reference_best_split(sorted_scores, exp_eps, orientation):
    """Exhaustive split sweep; ties go to the smaller m."""
    n = len(sorted_scores)
    qs = [reference_split_q(sorted_scores, exp_eps, m) for m in range(1, n + 1)]
    best = min(qs) if orientation == "loss" else max(qs)
    for m, q in enumerate(qs, 1):
        if q == best:
            return m
    raise AssertionError("unreachable")


def random_loss_table(rng, n):
    """Symmetric losses, zero diagonal, off-diagonal in (0, 1)."""
    upper = rng.random((n, n))
    sym = (upper + upper.T) / 2.0
    np.fill_diagonal(sym, 0.0)
    return sym


@pytest.fixture
def np_rng():
    return np.random.default_rng(20260814)
