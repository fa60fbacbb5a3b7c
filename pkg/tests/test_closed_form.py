import math

import numpy as np
import pytest

from bipartite_rr import (
    DegenerateBudgetError,
    PrivacyBudget,
    RegimeError,
    closed_form_m,
    equidistant_q_global,
    euclidean_loss_table,
    global_ratio_limit,
    global_search,
    local_ratio_bounds,
    m_over_n_limit,
    qg_brr_closed,
    quadratic_z,
)

EPS_GRID = [0.1, 0.5, 1.0, 2.0, 3.0, 5.0]


class TestQuadraticZ:
    def test_extreme_matches_first_step_numerator(self):
        eps = PrivacyBudget(0.1)
        assert quadratic_z("extreme", 5, eps, 2) == pytest.approx(math.exp(0.1) - 6.0)

    def test_extreme_matches_all_step_numerators(self):
        # the extreme priori's sorted distances are 0..n-1, and the
        # quadratic reproduces its numerator at every step
        for n in (4, 5, 9, 16):
            for eps_value in (0.2, 1.0, 3.0):
                eps = PrivacyBudget(eps_value)
                nums = global_search(euclidean_loss_table(n), eps,
                                     collect_numerators=True).derivative_numerators
                for i in range(2, n + 1):
                    assert quadratic_z("extreme", n, eps, i) == pytest.approx(
                        nums[0, i - 2], rel=1e-12, abs=1e-9)

    def test_middle_matches_odd_step_numerators(self):
        # tied distance pairs at the middle priori make num(2t) = num(2t+1);
        # the quadratics interpolate exactly at the odd steps
        for n, case in [(6, "middle_even"), (8, "middle_even"),
                        (5, "middle_odd"), (9, "middle_odd")]:
            mid = n // 2 if n % 2 == 0 else (n + 1) // 2
            for eps_value in (0.3, 1.0, 2.0):
                eps = PrivacyBudget(eps_value)
                nums = global_search(euclidean_loss_table(n), eps,
                                     collect_numerators=True).derivative_numerators
                for i in range(3, n, 2):
                    assert quadratic_z(case, n, eps, i) == pytest.approx(
                        nums[mid - 1, i - 2], rel=1e-12, abs=1e-9)
                for t in range(1, (n + 1) // 2):
                    assert nums[mid - 1, 2 * t - 2] == pytest.approx(
                        nums[mid - 1, 2 * t - 1], rel=1e-12, abs=1e-9)

    def test_first_step_always_negative(self):
        # z(1) < 0 at every priori shape, so m >= 1 is always reachable
        for n in (2, 3, 10, 101):
            eps = PrivacyBudget(1.0)
            assert quadratic_z("extreme", n, eps, 1) == pytest.approx(-n * (n - 1) / 2.0)
            assert quadratic_z("middle_even", n, eps, 1) == pytest.approx(-n * n / 4.0)
            assert quadratic_z("middle_odd", n, eps, 1) == pytest.approx((1.0 - n * n) / 4.0)

    def test_middle_odd_sign_change(self):
        eps = PrivacyBudget(0.1)
        assert quadratic_z("middle_odd", 5, eps, 3) < 0.0
        assert quadratic_z("middle_odd", 5, eps, 5) > 0.0

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            quadratic_z("corner", 5, PrivacyBudget(1.0), 2)
        with pytest.raises(ValueError):
            quadratic_z("extreme", 1, PrivacyBudget(1.0), 1)
        with pytest.raises(ValueError):
            quadratic_z("extreme", 5, PrivacyBudget(1.0), 0)


class TestClosedFormM:
    def test_five_point_small_budget(self):
        result = closed_form_m(5, PrivacyBudget(0.1))
        assert (result.m1, result.m2, result.m) == (2, 3, 2)
        assert not result.exact_root_hit

    def test_hundred_point(self):
        result = closed_form_m(100, PrivacyBudget(2.0))
        assert result.m == 27
        assert result.m == global_search(euclidean_loss_table(100), PrivacyBudget(2.0)).global_m

    def test_binary_domain(self):
        for eps_value in (1.0, 2.0, 10.0, 0.3):
            assert closed_form_m(2, PrivacyBudget(eps_value)).m == 1

    def test_zero_budget_routed_to_search(self):
        with pytest.raises(DegenerateBudgetError):
            closed_form_m(10, PrivacyBudget(0.0))

    def test_exact_root_at_log_two(self):
        # N=5, eps=ln 2 puts the middle quadratic's root exactly on 3:
        # the numerator there is e - 2 = 0, the strict rule rejects the
        # step, and the search profile is [2, 3, 1, 3, 2]
        eps = PrivacyBudget(math.log(2.0))
        result = closed_form_m(5, eps)
        trace = global_search(euclidean_loss_table(5), eps)
        assert result.exact_root_hit
        assert result.m2 == 1
        assert result.m == trace.global_m == 1
        assert list(trace.per_priori_m) == [2, 3, 1, 3, 2]

    def test_exact_root_extreme_candidate(self):
        eps = PrivacyBudget(math.log(2.0))
        result = closed_form_m(6, eps)
        assert result.exact_root_hit
        assert result.m1 == 2
        assert result.m == global_search(euclidean_loss_table(6), eps).global_m == 2

    def test_agreement_with_search_moderate_grid(self):
        eps_values = EPS_GRID + [math.log(2.0), math.log(3.0), 0.9624]
        for n in range(2, 80):
            table = euclidean_loss_table(n)
            for eps_value in eps_values:
                eps = PrivacyBudget(eps_value)
                assert closed_form_m(n, eps).m == global_search(table, eps).global_m, \
                    (n, eps_value)

    def test_m1_is_the_floor_of_the_extreme_root(self):
        for n in (3, 10, 100, 999):
            for eps_value in EPS_GRID:
                eps = PrivacyBudget(eps_value)
                result = closed_form_m(n, eps)
                assert quadratic_z("extreme", n, eps, result.m1) < 0.0
                if result.m1 < n:
                    assert quadratic_z("extreme", n, eps, result.m1 + 1) >= 0.0

    def test_m2_is_odd(self):
        for n in range(2, 60):
            for eps_value in EPS_GRID:
                result = closed_form_m(n, PrivacyBudget(eps_value))
                assert result.m2 % 2 == 1
                assert result.m == min(result.m1, result.m2)


class TestAsymptoticOracles:
    def test_m_over_n_limit_values(self):
        assert m_over_n_limit(PrivacyBudget(1.0)) == pytest.approx(0.37754, abs=1e-5)
        assert m_over_n_limit(PrivacyBudget(0.0)) == 0.5

    def test_m_tracks_limit_at_moderate_n(self):
        eps = PrivacyBudget(2.0)
        m = closed_form_m(100, eps).m
        assert m / 100.0 == pytest.approx(m_over_n_limit(eps), abs=0.01)

    def test_local_bounds_at_unit_budget(self):
        bounds = local_ratio_bounds(PrivacyBudget(1.0))
        assert bounds.sup_limit == pytest.approx(0.75508, abs=1e-5)
        assert bounds.inf_limit == pytest.approx(0.71037, abs=1e-4)

    def test_local_bounds_zero_budget(self):
        bounds = local_ratio_bounds(PrivacyBudget(0.0))
        assert bounds.sup_limit == 1.0
        assert bounds.inf_limit == pytest.approx(1.0)
        assert bounds.gap == pytest.approx(0.0, abs=1e-15)

    def test_gap_stays_under_half_sup(self):
        for eps_value in np.linspace(0.0, 12.0, 49):
            eps = PrivacyBudget(float(eps_value))
            bounds = local_ratio_bounds(eps)
            assert bounds.inf_limit <= bounds.sup_limit
            assert bounds.gap < 0.5 / (math.exp(eps.epsilon / 2.0) + 1.0) + 1e-15
            if eps.epsilon > 0:
                assert 0.0 < bounds.inf_limit <= 1.0
                assert 0.0 < bounds.sup_limit <= 1.0

    def test_global_limit_values(self):
        assert global_ratio_limit(PrivacyBudget(2.0)) == pytest.approx(0.5068, abs=1e-4)
        assert global_ratio_limit(PrivacyBudget(0.0)) == 1.0
        assert global_ratio_limit(PrivacyBudget(1.0)) == pytest.approx(0.7320, abs=1e-4)


class TestQgClosed:
    def test_tracks_exact_summation(self):
        for n in (101, 1001):
            for eps_value in (0.5, 1.0, 2.0):
                eps = PrivacyBudget(eps_value)
                m = closed_form_m(n, eps).m
                if m % 2 == 0:
                    m -= 1
                exact = equidistant_q_global(n, eps, m)
                approx = qg_brr_closed(n, eps, m)
                assert abs(approx - exact) / exact < 2.0 / n, (n, eps_value)

    def test_parity_regime_enforced(self):
        eps = PrivacyBudget(1.0)
        with pytest.raises(RegimeError):
            qg_brr_closed(100, eps, 3)
        with pytest.raises(RegimeError):
            qg_brr_closed(101, eps, 4)
        with pytest.raises(RegimeError):
            qg_brr_closed(101, eps, 101)

    def test_zero_budget_single_split_is_uniform_error(self):
        # with m=1 and eps=0 the formula collapses to (n^2-1)/(3n),
        # the expected distance of a uniform release
        for n in (11, 101):
            value = qg_brr_closed(n, PrivacyBudget(0.0), 1)
            assert value == pytest.approx((n * n - 1.0) / (3.0 * n), rel=1e-12)

    def test_limit_matches_global_ratio(self):
        # at c = m/n near the m/n limit, Q_g(BRR)/Q_g(GRR) approaches the
        # closed ratio as n grows
        eps = PrivacyBudget(1.0)
        n = 1_000_001
        m = int(n * m_over_n_limit(eps))
        if m % 2 == 0:
            m += 1
        grr_qg = (n * n - 1.0) / (3.0 * (eps.exp_eps + n - 1.0))
        ratio = qg_brr_closed(n, eps, m) / grr_qg
        assert ratio == pytest.approx(global_ratio_limit(eps), abs=1e-3)
