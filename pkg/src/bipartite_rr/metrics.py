"""Expected-score metrics: per-priori Q(k), global Q_g, normalized QLoss.

Q(k) is the expected released score conditioned on truth k, Q_g its
uniform average over prioris, and QLoss divides Q_g by the domain
diameter n - 1 (defined only for the unit-spaced Euclidean loss domain,
where that diameter is meaningful).
"""

from __future__ import annotations

import dataclasses
import math
from typing import List, Optional, Tuple

import numpy as np

from .core import LOSS, MechanismTable, PrivacyBudget, RandomSource, RankedRow, UtilityTable, sample_many
from .search import WeightProfile


class UndefinedRatioError(ValueError):
    """Baseline mechanism has zero global expected score."""


@dataclasses.dataclass(frozen=True)
class MetricsReport:
    per_priori_q: np.ndarray
    q_global: float
    q_loss: Optional[float]
    baseline_name: Optional[str] = None
    ratio_to_baseline: Optional[float] = None


@dataclasses.dataclass(frozen=True)
class RatioReport:
    """Per-priori and global Q ratios of one mechanism to a baseline."""

    per_priori_ratio: np.ndarray  # NaN where the baseline Q(k) is zero
    global_ratio: float
    undefined_prioris: Tuple[int, ...]


def is_equidistant_euclidean(table: UtilityTable) -> bool:
    """True when the table is exactly |k - j| with loss orientation."""
    if table.orientation != LOSS:
        return False
    idx = np.arange(table.n)
    return np.array_equal(table.values, np.abs(idx[:, None] - idx[None, :]).astype(float))


def _check_shapes(table: UtilityTable, mech: MechanismTable):
    if table.n != mech.n:
        raise ValueError(f"table is {table.n}x{table.n} but mechanism is {mech.n}x{mech.n}")


def local_expected_error(table: UtilityTable, mech: MechanismTable, k: int) -> float:
    """Q(k) = sum_y values(k, y) * Pr[y | k], in candidate space."""
    _check_shapes(table, mech)
    if not 1 <= k <= table.n:
        raise ValueError(f"priori {k} outside 1..{table.n}")
    return float(table.values[k - 1] @ mech.probs[k - 1])


def local_expected_error_ranked(row: RankedRow, profile: WeightProfile) -> float:
    """Rank-space evaluation of Q(k): sum_i lam_i * s_i / sum_j s_j.

    Independent path from local_expected_error, kept as a cross-check.
    """
    return float(row.sorted_scores @ profile.s) / float(profile.s.sum())


def per_priori_errors(table: UtilityTable, mech: MechanismTable) -> np.ndarray:
    _check_shapes(table, mech)
    return np.einsum("ij,ij->i", table.values, mech.probs)


def global_expected_error(table: UtilityTable, mech: MechanismTable,
                          baseline: Optional[MechanismTable] = None) -> MetricsReport:
    """Uniform average of Q(k) over prioris, with optional baseline ratio."""
    per = per_priori_errors(table, mech)
    q_global = float(per.mean())
    q_loss = q_global / (table.n - 1) if is_equidistant_euclidean(table) else None
    baseline_name = None
    ratio = None
    if baseline is not None:
        base_q = float(per_priori_errors(table, baseline).mean())
        if base_q == 0.0:
            raise UndefinedRatioError(f"baseline {baseline.name!r} has q_global = 0")
        baseline_name = baseline.name
        ratio = q_global / base_q
    return MetricsReport(per_priori_q=per, q_global=q_global, q_loss=q_loss,
                         baseline_name=baseline_name, ratio_to_baseline=ratio)


def ratio_report(table: UtilityTable, mech_a: MechanismTable,
                 mech_b: MechanismTable) -> RatioReport:
    """Q(k) and Q_g ratios of mech_a to mech_b; zero-baseline prioris are
    reported as NaN instead of raising."""
    qa = per_priori_errors(table, mech_a)
    qb = per_priori_errors(table, mech_b)
    qb_global = float(qb.mean())
    if qb_global == 0.0:
        raise UndefinedRatioError(f"baseline {mech_b.name!r} has q_global = 0")
    undefined = np.flatnonzero(qb == 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        per = np.where(qb == 0.0, np.nan, qa / qb)
    return RatioReport(per_priori_ratio=per,
                       global_ratio=float(qa.mean()) / qb_global,
                       undefined_prioris=tuple(int(k) + 1 for k in undefined))


def monte_carlo_q(table: UtilityTable, mech: MechanismTable, n: int,
                  rng: RandomSource) -> Tuple[float, float]:
    """Estimate q_global by sampling: uniform priori, one release each.

    Returns:
        (estimate, standard error); the estimate is the mean released
        score and the SE its sample standard deviation over sqrt(n).
    """
    _check_shapes(table, mech)
    if n < 1:
        raise ValueError(f"need n >= 1 samples, got {n}")
    prioris = np.minimum((rng.uniforms(n) * table.n).astype(int), table.n - 1) + 1
    scores = np.empty(n)
    for k in np.unique(prioris):
        mask = prioris == k
        released = sample_many(mech, int(k), int(mask.sum()), rng)
        scores[mask] = table.values[k - 1, released - 1]
    estimate = float(scores.mean())
    se = float(scores.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return estimate, se


def split_q_values(row: RankedRow, eps: PrivacyBudget) -> np.ndarray:
    """Q(k) for every split count m' = 1..n at this priori.

    Rank-space: Q(m') = ((e-1) * prefix_{m'} + total) / (m'(e-1) + n).
    """
    lam = row.sorted_scores
    n = lam.size
    e1 = eps.exp_eps - 1.0
    prefix = np.cumsum(lam)
    denom = np.arange(1, n + 1) * e1 + n
    return (e1 * prefix + prefix[-1]) / denom


def optimal_split(row: RankedRow, eps: PrivacyBudget) -> int:
    """Exhaustive best split for this priori, ties to the smaller m."""
    q = split_q_values(row, eps)
    if row.orientation == LOSS:
        return int(np.argmin(q)) + 1
    return int(np.argmax(q)) + 1


def equidistant_local_errors(n: int, eps: PrivacyBudget, m: int) -> np.ndarray:
    """Q(k) for all prioris of the unit-spaced Euclidean domain in O(n).

    The sorted distances at priori k are 0, 1, 1, 2, 2, ... truncated to
    one side past the nearer boundary, so the split sums are arithmetic
    series and no n x n table is needed. m = 1 gives plain randomized
    response. Large domains (n in the tens of thousands) stay cheap.
    """
    if not 1 <= m <= n:
        raise ValueError(f"split count m={m} outside 1..{n}")
    k = np.arange(1, n + 1, dtype=float)
    left = k - 1.0
    right = n - k
    total = left * (left + 1.0) / 2.0 + right * (right + 1.0) / 2.0
    near = np.minimum(left, right)

    # sum of the m best distances: paired 1,1,2,2,... while both sides
    # last, then single file to the far boundary
    paired = (m * m - 1.0) / 4.0 if m % 2 == 1 else m * m / 4.0
    extra = m - 1.0 - 2.0 * near  # one-sided tail length when positive
    tail = near * (near + 1.0) + extra * near + extra * (extra + 1.0) / 2.0
    best = np.where(extra <= 0.0, paired, tail)

    e1 = eps.exp_eps - 1.0
    return (e1 * best + total) / (m * e1 + n)


def equidistant_q_global(n: int, eps: PrivacyBudget, m: int) -> float:
    """Q_g on the unit-spaced Euclidean domain in O(n); m = 1 is GRR."""
    return float(equidistant_local_errors(n, eps, m).mean())
