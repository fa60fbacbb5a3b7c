"""Derivative-sign search for the bipartite split count m.

The weight profile starts as [e^eps, 1, ..., 1] over the ranked
candidates. Raising the weight of rank i changes the expected score with
the sign of num(i) = sum_j (lam_i - lam_j) * s_j, so the search promotes
ranks while that sign is favorable (negative for losses, positive for
utilities) and stops at the first unfavorable step. A numerator of
exactly zero stops the loop: the step would not improve anything and the
smaller split stays closer to plain randomized response.
"""

from __future__ import annotations

import dataclasses
from typing import List, Optional, Tuple

import numpy as np

from .core import LOSS, PrivacyBudget, RankedRow, UtilityTable


@dataclasses.dataclass(frozen=True)
class WeightProfile:
    """Bipartite rank weights: s[0..m-1] = e^eps, s[m..n-1] = 1."""

    s: np.ndarray
    m: int

    def __post_init__(self):
        if not 1 <= self.m <= self.s.size:
            raise ValueError(f"m={self.m} outside 1..{self.s.size}")


def bipartite_profile(n: int, m: int, eps: PrivacyBudget) -> WeightProfile:
    s = np.ones(n)
    s[:m] = eps.exp_eps
    s.setflags(write=False)
    return WeightProfile(s=s, m=m)


@dataclasses.dataclass(frozen=True)
class SearchTrace:
    """Per-priori split counts and their global minimum."""

    per_priori_m: np.ndarray
    global_m: int
    # optional (n, n-1) log of step numerators, column i-2 holds num(i)
    derivative_numerators: Optional[np.ndarray] = None


def derivative_numerator(row: RankedRow, profile: WeightProfile, i: int) -> float:
    """num(i) = sum_j (lam_i - lam_j) s_j for 1-based rank i."""
    lam = row.sorted_scores
    if not 2 <= i <= lam.size:
        raise ValueError(f"step index {i} outside 2..{lam.size}")
    return float(np.dot(lam[i - 1] - lam, profile.s))


def _step_numerators(sorted_scores: np.ndarray, eps: PrivacyBudget) -> np.ndarray:
    # At step i the first i-1 ranks already carry e^eps, the rest carry 1,
    # so num(i) depends only on i and one cumsum evaluates every step:
    # num(i) = lam_i * ((i-1)(e-1) + n) - ((e-1) * prefix_{i-1} + total).
    lam = np.atleast_2d(sorted_scores)
    n = lam.shape[1]
    e1 = eps.exp_eps - 1.0
    csum = np.cumsum(lam, axis=1)
    total = csum[:, -1:]
    steps = np.arange(2, n + 1)
    scale = (steps - 1) * e1 + n
    nums = lam[:, 1:] * scale - (e1 * csum[:, :-1] + total)
    return nums if sorted_scores.ndim == 2 else nums[0]


def _accepted_m(nums: np.ndarray, orientation: str) -> np.ndarray:
    favorable = nums < 0.0 if orientation == LOSS else nums > 0.0
    rejected = ~favorable
    first_reject = np.argmax(rejected, axis=1)
    any_reject = rejected.any(axis=1)
    n = nums.shape[1] + 1
    return np.where(any_reject, first_reject + 1, n).astype(int)


def local_search(row: RankedRow, eps: PrivacyBudget) -> Tuple[WeightProfile, int]:
    """Find this priori's split count m and its final weight profile."""
    nums = _step_numerators(row.sorted_scores, eps)
    m = int(_accepted_m(nums[None, :], row.orientation)[0])
    return bipartite_profile(row.sorted_scores.size, m, eps), m


def sorted_score_matrix(table: UtilityTable) -> np.ndarray:
    """All rows ranked best-first at once; ties do not affect the scores."""
    if table.orientation == LOSS:
        return np.sort(table.values, axis=1)
    return -np.sort(-table.values, axis=1)


def global_search(table: UtilityTable, eps: PrivacyBudget,
                  collect_numerators: bool = False) -> SearchTrace:
    """Run the local search at every priori and take the minimum m.

    The released mechanism must use one uniform split count, otherwise
    the split itself would leak the truth, so the global mechanism takes
    min_k m(k).
    """
    nums = _step_numerators(sorted_score_matrix(table), eps)
    per_priori = _accepted_m(nums, table.orientation)
    return SearchTrace(per_priori_m=per_priori,
                       global_m=int(per_priori.min()),
                       derivative_numerators=nums if collect_numerators else None)
