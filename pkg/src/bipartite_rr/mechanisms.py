"""Concrete mechanism constructors: GRR, BRR, exponential, Laplace noise."""

from __future__ import annotations

import dataclasses

import numpy as np

from .core import (
    LOSS,
    DiscreteDomain,
    MechanismTable,
    PrivacyBudget,
    RandomSource,
    RankedRow,
    UtilityTable,
    rank_perm_matrix,
)


@dataclasses.dataclass(frozen=True)
class BrrParams:
    """Split count m with the shared-denominator probability pair.

    p_star = e^eps / (m e^eps + n - m) goes to the m best-ranked
    candidates, q_star = 1 / (m e^eps + n - m) to the rest, so every row
    sums to m p_star + (n - m) q_star = 1 and p_star / q_star = e^eps.
    """

    m: int
    p_star: float
    q_star: float


def brr_params(n: int, eps: PrivacyBudget, m: int) -> BrrParams:
    if not 1 <= m <= n:
        raise ValueError(f"split count m={m} outside 1..{n}")
    denom = m * eps.exp_eps + (n - m)
    return BrrParams(m=int(m), p_star=eps.exp_eps / denom, q_star=1.0 / denom)


def grr(domain: DiscreteDomain, eps: PrivacyBudget) -> MechanismTable:
    """Generalized randomized response: the truth gets e^eps times the
    weight of every other candidate."""
    params = brr_params(domain.n, eps, 1)
    probs = np.full((domain.n, domain.n), params.q_star)
    np.fill_diagonal(probs, params.p_star)
    return MechanismTable(probs=probs, epsilon=eps, name="grr")


def construct_Ym(row: RankedRow, m: int) -> np.ndarray:
    """The m best-ranked candidate ids for this priori (rank order kept).

    Contains the priori point whenever its score is the strict row
    optimum; ties inherit the deterministic smaller-id rank order.
    """
    if not 1 <= m <= row.perm.size:
        raise ValueError(f"split count m={m} outside 1..{row.perm.size}")
    return row.perm[:m].copy()


def brr(table: UtilityTable, eps: PrivacyBudget, m: int) -> MechanismTable:
    """Bipartite randomized response for a given split count m.

    Row x gives p_star to the m candidates ranked best for priori x and
    q_star to everyone else. m = 1 reproduces grr entry for entry.
    """
    n = table.n
    params = brr_params(n, eps, m)
    perms = rank_perm_matrix(table)
    probs = np.full((n, n), params.q_star)
    probs[np.arange(n)[:, None], perms[:, :m] - 1] = params.p_star
    return MechanismTable(probs=probs, epsilon=eps, name="brr")


def exponential(table: UtilityTable, eps: PrivacyBudget) -> MechanismTable:
    """Exponential mechanism over the table's scores.

    Scores are negated losses or raw utilities; sensitivity is the
    largest per-candidate score spread across prioris, and the weight
    exponent eps * u / (2 * sensitivity) keeps the privacy ratio within
    e^eps. A zero-spread table yields the uniform distribution.
    """
    u = -table.values if table.orientation == LOSS else table.values
    spread = float((u.max(axis=0) - u.min(axis=0)).max())
    n = table.n
    if spread == 0.0:
        probs = np.full((n, n), 1.0 / n)
    else:
        logits = eps.epsilon * u / (2.0 * spread)
        logits -= logits.max(axis=1, keepdims=True)  # overflow guard
        weights = np.exp(logits)
        probs = weights / weights.sum(axis=1, keepdims=True)
    return MechanismTable(probs=probs, epsilon=eps, name="exponential")


def laplace_noise(scale: float, rng: RandomSource, size=None):
    """Zero-mean Laplace draw(s) by inverse CDF of a uniform.

    x = -scale * sgn(u - 1/2) * ln(1 - 2|u - 1/2|); the log argument is
    clamped away from zero so a u of exactly 0 cannot produce infinity.
    """
    if not scale > 0.0:
        raise ValueError(f"scale must be > 0, got {scale!r}")
    u = rng.uniforms(size)
    centered = u - 0.5
    inner = np.maximum(1.0 - 2.0 * np.abs(centered), np.finfo(float).tiny)
    value = -scale * np.sign(centered) * np.log(inner)
    return value if size is not None else float(value)
