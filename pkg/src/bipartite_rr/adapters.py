"""Domain adapters: continuous intervals, built-in utility tables, and
the one-call constructor for arbitrary tables."""

from __future__ import annotations

import dataclasses
import math
from typing import Tuple

import numpy as np

from .core import (
    LOSS,
    UTILITY,
    MechanismTable,
    PrivacyBudget,
    RandomSource,
    UtilityTable,
)
from .closed_form import closed_form_m
from .mechanisms import brr, brr_params
from .search import SearchTrace, global_search


@dataclasses.dataclass(frozen=True)
class IntervalSpec:
    """Uniform grid of n points over [a, b]: point j = a + (j-1) L with
    spacing L = (b - a) / (n - 1)."""

    a: float
    b: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise ValueError(f"need finite a < b, got a={self.a!r}, b={self.b!r}")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"need integer n >= 2, got {self.n!r}")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "n", int(self.n))

    @property
    def spacing(self) -> float:
        return (self.b - self.a) / (self.n - 1)

    def grid(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.n)

    def point(self, j: int) -> float:
        return self.a + (j - 1) * self.spacing


@dataclasses.dataclass(frozen=True)
class NearestPoint:
    index: int  # 1-based grid index
    value: float
    clamped: bool  # the query fell outside [a, b]


def nearest_point(spec: IntervalSpec, x: float) -> NearestPoint:
    """Closest grid point to x; exact midpoints resolve to the smaller
    index, and out-of-range inputs clamp to the boundary with a flag."""
    if not math.isfinite(x):
        raise ValueError(f"query must be finite, got {x!r}")
    clamped = x < spec.a or x > spec.b
    clipped = min(max(x, spec.a), spec.b)
    position = (clipped - spec.a) / spec.spacing  # 0-based fractional index
    j = int(math.ceil(position - 0.5))  # ties round down
    j = min(max(j, 0), spec.n - 1)
    return NearestPoint(index=j + 1, value=spec.point(j + 1), clamped=clamped)


def euclidean_loss_table(n: int) -> UtilityTable:
    """Unit-spaced absolute-distance losses: values(k, j) = |k - j|."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    idx = np.arange(n)
    return UtilityTable(values=np.abs(idx[:, None] - idx[None, :]).astype(float),
                        orientation=LOSS)


def jaccard_utility_table(n: int) -> UtilityTable:
    """Generalized Jaccard similarity on labels 1..n:
    values(x, y) = xy / (x^2 + y^2 - xy), which lies in (0, 1] and is 1
    exactly on the diagonal."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    labels = np.arange(1, n + 1, dtype=float)
    x = labels[:, None]
    y = labels[None, :]
    return UtilityTable(values=x * y / (x * x + y * y - x * y), orientation=UTILITY)


def equidistant_m(n: int, eps: PrivacyBudget) -> int:
    """Split count for the unit-spaced domain: closed form when eps > 0,
    search fallback at eps = 0 (every split is uniform there anyway)."""
    if eps.epsilon > 0.0:
        return closed_form_m(n, eps).m
    return global_search(euclidean_loss_table(n), eps).global_m


def general_brr(table: UtilityTable, eps: PrivacyBudget) -> Tuple[MechanismTable, SearchTrace]:
    """Search the table (either orientation) and build the mechanism.

    Always runs the full per-priori search because the trace is part of
    the result; the equidistant closed form stays available separately
    for large unit-spaced domains where no trace is needed.
    """
    trace = global_search(table, eps)
    return brr(table, eps, trace.global_m), trace


def perturb_continuous(spec: IntervalSpec, eps: PrivacyBudget, x: float,
                       rng: RandomSource) -> float:
    """Release a privatized grid value for a continuous input.

    Maps x to its nearest grid point, splits the grid into the m nearest
    neighbors (high weight) and the rest (low weight), and samples by
    inverse CDF over ascending grid indices. Consumes exactly one
    uniform. The released value always lies on the grid, and the
    distribution depends only on the clamped nearest point, so the
    privacy guarantee holds over the grid.
    """
    near = nearest_point(spec, x)
    m = equidistant_m(spec.n, eps)
    row = _brr_row_for_index(spec.n, eps, m, near.index)
    u = float(rng.uniforms())
    j = int(np.searchsorted(np.cumsum(row), u, side="right"))
    return spec.point(min(j, spec.n - 1) + 1)


def _brr_row_for_index(n: int, eps: PrivacyBudget, m: int, index: int) -> np.ndarray:
    # Single mechanism row without the n x n table. Stable argsort over
    # index distance reproduces the table's smaller-id tie-break.
    params = brr_params(n, eps, m)
    distances = np.abs(np.arange(1, n + 1) - index)
    order = np.argsort(distances, kind="stable")
    row = np.full(n, params.q_star)
    row[order[:m]] = params.p_star
    return row
