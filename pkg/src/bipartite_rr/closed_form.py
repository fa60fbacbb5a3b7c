"""Closed-form split count on equidistant domains, plus asymptotic oracles.

On the unit-spaced integer domain the search's step numerators collapse
to quadratics in the step index i:

  extreme priori (sorted distances 0, 1, 2, ...):
      z1(i) = (e-1)/2 i^2 + (n - e/2 + 1/2) i - n^2/2 - n/2
  middle priori, even n (0, 1, 1, ..., n/2-1, n/2-1, n/2):
      z2(i) = (e-1)/4 i^2 + (n - (e-1))/2 i + ((e-1) - n^2 - 2n)/4
  middle priori, odd n (0, 1, 1, ..., (n-1)/2, (n-1)/2):
      z3(i) = z2(i) + 1/4

with e = e^eps. z1 matches the extreme row's numerator at every step;
z2 and z3 match the middle row's numerator at odd steps only, because
the middle row's tied distance pairs make num(2t) = num(2t+1) and the
quadratics interpolate the odd steps. The global split count is the
smaller of the two candidates:

  m1 = largest i with z1(i) < 0
  m2 = largest odd i with z_mid(i) < 0

All other prioris sit between those two extremes and never produce a
smaller m. Floors land on the quadratic root itself exactly when the
root is an integer; the strict < 0 stop rule then demands one step less,
which the root-walk below applies automatically (reported via
exact_root_hit).
"""

from __future__ import annotations

import dataclasses
import math
from typing import Tuple

from .core import PrivacyBudget

EXTREME = "extreme"
MIDDLE_EVEN = "middle_even"
MIDDLE_ODD = "middle_odd"
QUADRATIC_CASES = (EXTREME, MIDDLE_EVEN, MIDDLE_ODD)


class DegenerateBudgetError(ValueError):
    """eps = 0 has no closed form (the formulas divide by e^eps - 1);
    callers should fall back to the search, where any m is optimal."""


class RegimeError(ValueError):
    """Inputs outside the parity regime a closed-form summation covers."""


def quadratic_z(case: str, n: int, eps: PrivacyBudget, i: int) -> float:
    """Evaluate the step-numerator quadratic; negative means the search
    would still accept step i at that priori."""
    if case not in QUADRATIC_CASES:
        raise ValueError(f"case must be one of {QUADRATIC_CASES}, got {case!r}")
    if n < 2 or i < 1:
        raise ValueError(f"need n >= 2 and i >= 1, got n={n}, i={i}")
    e = eps.exp_eps
    if case == EXTREME:
        return (e - 1.0) / 2.0 * i * i + (n - e / 2.0 + 0.5) * i - n * n / 2.0 - n / 2.0
    z2 = (e - 1.0) / 4.0 * i * i + (n - (e - 1.0)) / 2.0 * i + ((e - 1.0) - n * n - 2.0 * n) / 4.0
    return z2 if case == MIDDLE_EVEN else z2 + 0.25


@dataclasses.dataclass(frozen=True)
class ClosedFormM:
    """Closed-form split count with both root candidates.

    m1: extreme-priori candidate, m2: middle-priori candidate (odd by
    construction), m = min(m1, m2). exact_root_hit marks that a quadratic
    root landed on an integer and the strict stop rule trimmed a step.
    """

    m1: int
    m2: int
    m: int
    exact_root_hit: bool


def _largest_negative(case: str, n: int, eps: PrivacyBudget, start: int) -> Tuple[int, bool]:
    # Walk from the floored root to the exact boundary of z < 0. The
    # float sqrt can land one step off and an integer root must be
    # excluded outright, so trust the quadratic, not the floor.
    i = min(max(start, 1), n)
    while i > 1 and quadratic_z(case, n, eps, i) >= 0.0:
        i -= 1
    while i < n and quadratic_z(case, n, eps, i + 1) < 0.0:
        i += 1
    hit = i < n and quadratic_z(case, n, eps, i + 1) == 0.0
    return i, hit


def closed_form_m(n: int, eps: PrivacyBudget) -> ClosedFormM:
    """Split count for the unit-spaced integer domain without searching.

    Equals the global search's m for every n >= 2 and eps > 0.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if eps.epsilon == 0.0:
        raise DegenerateBudgetError("eps = 0: no closed form, use global_search")
    e = eps.exp_eps

    root1 = (math.sqrt(n * n * e + 0.25 * (1.0 - e) ** 2) - (n - e / 2.0 + 0.5)) / (e - 1.0)
    m1, hit1 = _largest_negative(EXTREME, n, eps, math.floor(root1))

    if n % 2 == 0:
        case = MIDDLE_EVEN
        root2 = n / (math.exp(eps.epsilon / 2.0) + 1.0) + 1.0
    else:
        case = MIDDLE_ODD
        root2 = (math.sqrt(e * (n * n - 1.0) + 1.0) - n) / (e - 1.0) + 1.0
    i2, hit2 = _largest_negative(case, n, eps, math.floor(root2))
    m2 = max(i2 if i2 % 2 == 1 else i2 - 1, 1)

    return ClosedFormM(m1=m1, m2=m2, m=min(m1, m2), exact_root_hit=hit1 or hit2)


def m_over_n_limit(eps: PrivacyBudget) -> float:
    """Limit of m/n as the domain grows: 1 / (e^{eps/2} + 1)."""
    return 1.0 / (math.exp(eps.epsilon / 2.0) + 1.0)


@dataclasses.dataclass(frozen=True)
class LocalRatioBounds:
    sup_limit: float
    inf_limit: float
    gap: float


def local_ratio_bounds(eps: PrivacyBudget) -> LocalRatioBounds:
    """Asymptotic bounds on the per-priori BRR/GRR expected-error ratio.

    The supremum 2 / (r + 1) (r = e^{eps/2}) is attained toward the
    extreme prioris; the infimum has the closed form below and the gap
    between them stays under (1/2) / (r + 1).
    """
    r = math.exp(eps.epsilon / 2.0)
    sup = 2.0 / (r + 1.0)
    inf = r - (r - 1.0) / (r + 1.0) * (math.sqrt(r * r + 2.0 * r + 2.0) + 1.0)
    return LocalRatioBounds(sup_limit=sup, inf_limit=inf, gap=sup - inf)


def global_ratio_limit(eps: PrivacyBudget) -> float:
    """Exact limit of Q_g(BRR) / Q_g(GRR): (7r + 9) / (4 (r + 1)^2)."""
    r = math.exp(eps.epsilon / 2.0)
    return (7.0 * r + 9.0) / (4.0 * (r + 1.0) ** 2)


def qg_brr_closed(n: int, eps: PrivacyBudget, m: int) -> float:
    """Polynomial approximation of Q_g(BRR) for odd n and odd m.

    With c = m/n,
      n * Q_g = ((e-1) n^2 c^3 + 3 (e-1) n^2 c^2 - (e-1) c - 3e - 1 + 4 n^2)
                / (12 ((e-1) c + 1))
    which drops lower-order boundary terms, so it is a convergence aid
    for large n, not ground truth; the exact summation in metrics stays
    the oracle.
    """
    if n % 2 == 0 or m % 2 == 0 or not 1 <= m < n:
        raise RegimeError(f"needs odd n, odd m, 1 <= m < n; got n={n}, m={m}")
    e = eps.exp_eps
    c = m / n
    t = e - 1.0
    numer = t * n * n * c ** 3 + 3.0 * t * n * n * c * c - t * c - 3.0 * e - 1.0 + 4.0 * n * n
    return numer / (12.0 * (t * c + 1.0)) / n
