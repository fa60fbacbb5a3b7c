"""Shared domain types for discrete privacy mechanisms.

Houses the privacy budget, candidate domains, utility tables with their
ranked per-priori views, row-stochastic mechanism tables, a numeric
validator for the privacy guarantee, and seeded sampling.
"""

from __future__ import annotations

import dataclasses
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

LOSS = "loss"
UTILITY = "utility"
ORIENTATIONS = (LOSS, UTILITY)

# epsilon beyond this overflows exp() in double precision
_MAX_EPSILON = 700.0


@dataclasses.dataclass(frozen=True)
class PrivacyBudget:
    """Privacy budget epsilon with its cached exponential.

    Attributes:
        epsilon: non-negative budget; 0 is allowed and degenerates every
            mechanism here to the uniform distribution.
        exp_eps: e**epsilon, precomputed once.
    """

    epsilon: float
    exp_eps: float = dataclasses.field(init=False, repr=False, compare=False)

    def __post_init__(self):
        eps = float(self.epsilon)
        if not math.isfinite(eps) or eps < 0.0:
            raise ValueError(f"epsilon must be finite and >= 0, got {self.epsilon!r}")
        if eps > _MAX_EPSILON:
            raise ValueError(f"epsilon {eps} > {_MAX_EPSILON} would overflow exp()")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "exp_eps", math.exp(eps))


@dataclasses.dataclass(frozen=True)
class DiscreteDomain:
    """Equidistant candidate domain: integer labels 1..n with unit spacing."""

    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"domain size must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def labels(self) -> np.ndarray:
        return np.arange(1, self.n + 1)


def _as_square_matrix(values, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{what} must be a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} contains non-finite entries")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclasses.dataclass(frozen=True)
class UtilityTable:
    """Per-priori candidate scores.

    values[k-1, j-1] is the score of releasing candidate j when the truth
    is k. Loss orientation: lower is better and the diagonal is each row's
    minimum. Utility orientation: higher is better and the diagonal is
    each row's maximum.
    """

    values: np.ndarray
    orientation: str

    def __post_init__(self):
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {self.orientation!r}")
        arr = _as_square_matrix(self.values, "utility table")
        diag = np.diagonal(arr)
        if self.orientation == LOSS:
            if not np.all(diag <= arr.min(axis=1)):
                raise ValueError("loss table: diagonal must be each row's minimum")
        else:
            if not np.all(diag >= arr.max(axis=1)):
                raise ValueError("utility table: diagonal must be each row's maximum")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclasses.dataclass(frozen=True)
class RankedRow:
    """One priori's candidates sorted best-first.

    perm maps rank position (0-based index) to 1-based candidate id;
    sorted_scores[i] is the score of candidate perm[i]. Ties sort by
    smaller candidate id, so the ranking is deterministic.
    """

    priori: int
    sorted_scores: np.ndarray
    perm: np.ndarray
    orientation: str


def rank_perm_matrix(table: UtilityTable) -> np.ndarray:
    """Rank all rows at once: entry (k, i) is the candidate id at rank i.

    Best-first per orientation; ties broken by smaller candidate id via a
    stable sort over ascending ids.
    """
    if table.orientation == LOSS:
        order = np.argsort(table.values, axis=1, kind="stable")
    else:
        order = np.argsort(-table.values, axis=1, kind="stable")
    return order + 1


def rank_rows(table: UtilityTable) -> List[RankedRow]:
    """Sort each priori's row best-first with the deterministic tie-break."""
    perms = rank_perm_matrix(table)
    rows = []
    for k in range(table.n):
        perm = perms[k]
        scores = table.values[k, perm - 1]
        scores.setflags(write=False)
        perm.setflags(write=False)
        rows.append(RankedRow(priori=k + 1, sorted_scores=scores, perm=perm,
                              orientation=table.orientation))
    return rows


@dataclasses.dataclass(frozen=True)
class MechanismTable:
    """Row-stochastic release-probability table: probs[x-1, y-1] = Pr[y | x].

    Construction only checks shape and finiteness so that deliberately
    broken tables can still be fed to validate_mechanism.
    """

    probs: np.ndarray
    epsilon: PrivacyBudget
    name: str

    def __post_init__(self):
        object.__setattr__(self, "probs", _as_square_matrix(self.probs, "mechanism table"))

    @property
    def n(self) -> int:
        return self.probs.shape[0]


@dataclasses.dataclass(frozen=True)
class ValidationReport:
    """Outcome of the numeric privacy/stochasticity check."""

    max_row_dev: float
    max_ldp_ratio: float
    worst_triple: Tuple[int, int, int]  # (x, x_prime, y), 1-based
    entries_in_range: bool
    passed: bool


ROW_SUM_TOL = 1e-12
LDP_RATIO_SLACK = 1e-9


def validate_mechanism(mech: MechanismTable,
                       row_tol: float = ROW_SUM_TOL,
                       ratio_slack: float = LDP_RATIO_SLACK) -> ValidationReport:
    """Check row sums, entry range, and the privacy ratio bound.

    The ratio bound requires probs(x, y) <= e^eps * probs(x', y) for every
    triple; equivalently each column's max/min ratio stays <= e^eps, up to
    the multiplicative slack. Columns that are identically zero never
    violate the bound and count as ratio 1.

    Returns:
        ValidationReport with the worst observed deviations; report-only,
        never raises on a violation.
    """
    probs = mech.probs
    max_row_dev = float(np.abs(probs.sum(axis=1) - 1.0).max())
    entries_ok = bool((probs >= 0.0).all() and (probs <= 1.0).all())

    col_max = probs.max(axis=0)
    col_min = probs.min(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(col_max == 0.0, 1.0, col_max / np.where(col_min == 0.0, np.nan, col_min))
    ratios = np.where(np.isnan(ratios), np.inf, ratios)  # zero-min, nonzero-max columns
    y = int(np.argmax(ratios))
    x = int(np.argmax(probs[:, y]))
    x_prime = int(np.argmin(probs[:, y]))
    max_ratio = float(ratios[y])

    passed = (max_row_dev <= row_tol
              and entries_ok
              and max_ratio <= mech.epsilon.exp_eps * (1.0 + ratio_slack))
    return ValidationReport(max_row_dev=max_row_dev,
                            max_ldp_ratio=max_ratio,
                            worst_triple=(x + 1, x_prime + 1, y + 1),
                            entries_in_range=entries_ok,
                            passed=passed)


class RandomSource:
    """Seeded deterministic uniform stream.

    Identical seed (and spawn path) always reproduces the identical
    sequence. Parallel workers must not share one source; derive
    independent children with child(index) instead.
    """

    def __init__(self, seed: int, _spawn_key: Tuple[int, ...] = ()):
        self.seed = int(seed)
        self.spawn_key = tuple(_spawn_key)
        sequence = np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)
        self._gen = np.random.Generator(np.random.PCG64(sequence))
        self.draws = 0

    def uniforms(self, n: Optional[int] = None) -> np.ndarray:
        """Draw n uniforms from [0, 1); scalar array when n is None."""
        count = 1 if n is None else int(n)
        self.draws += count
        return self._gen.random() if n is None else self._gen.random(count)

    def child(self, index: int) -> "RandomSource":
        return RandomSource(self.seed, self.spawn_key + (int(index),))

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, spawn_key={self.spawn_key}, draws={self.draws})"


def sample_many(mech: MechanismTable, x: int, count: int, rng: RandomSource) -> np.ndarray:
    """Draw released candidate ids for truth x by inverse CDF.

    The CDF runs over candidate ids in ascending order, so a uniform u
    maps to the smallest id whose cumulative probability exceeds u.
    """
    if not 1 <= x <= mech.n:
        raise ValueError(f"truth {x} outside 1..{mech.n}")
    cdf = np.cumsum(mech.probs[x - 1])
    u = rng.uniforms(count)
    idx = np.searchsorted(cdf, u, side="right")
    return np.minimum(idx, mech.n - 1) + 1


def sample(mech: MechanismTable, x: int, rng: RandomSource) -> int:
    """Single release draw for truth x."""
    return int(sample_many(mech, x, 1, rng)[0])


def load_utility_csv(path, orientation: str) -> UtilityTable:
    """Read an n x n utility table from headerless CSV.

    The file carries values only; orientation arrives out-of-band.
    """
    values = np.loadtxt(path, delimiter=",", ndmin=2)
    return UtilityTable(values=values, orientation=orientation)


def save_utility_csv(path, table: UtilityTable) -> None:
    np.savetxt(path, table.values, delimiter=",", fmt="%.12g")
