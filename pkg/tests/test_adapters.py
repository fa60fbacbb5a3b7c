import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipartite_rr import (
    IntervalSpec,
    PrivacyBudget,
    RandomSource,
    UtilityTable,
    brr,
    equidistant_m,
    euclidean_loss_table,
    general_brr,
    global_search,
    jaccard_utility_table,
    nearest_point,
    per_priori_errors,
    perturb_continuous,
    validate_mechanism,
)

from conftest import random_loss_table


class TestIntervalSpec:
    def test_grid_endpoints_and_spacing(self):
        spec = IntervalSpec(0.0, 10.0, 11)
        assert spec.spacing == 1.0
        assert spec.point(1) == 0.0
        assert spec.point(11) == 10.0
        assert spec.grid() == pytest.approx(np.arange(11.0))

    def test_rejects_bad_bounds(self):
        with pytest.raises(ValueError):
            IntervalSpec(1.0, 1.0, 5)
        with pytest.raises(ValueError):
            IntervalSpec(2.0, 1.0, 5)
        with pytest.raises(ValueError):
            IntervalSpec(0.0, 1.0, 1)
        with pytest.raises(ValueError):
            IntervalSpec(0.0, math.inf, 5)


class TestNearestPoint:
    def test_interior_point(self):
        spec = IntervalSpec(0.0, 10.0, 11)
        near = nearest_point(spec, 3.2)
        assert (near.index, near.value, near.clamped) == (4, 3.0, False)

    def test_midpoint_rounds_to_smaller_index(self):
        spec = IntervalSpec(0.0, 10.0, 11)
        near = nearest_point(spec, 3.5)
        assert (near.index, near.value) == (4, 3.0)

    def test_clamping(self):
        spec = IntervalSpec(-1.0, 1.0, 5)
        low = nearest_point(spec, -7.0)
        high = nearest_point(spec, 2.5)
        assert (low.index, low.value, low.clamped) == (1, -1.0, True)
        assert (high.index, high.value, high.clamped) == (5, 1.0, True)

    def test_rejects_non_finite(self):
        spec = IntervalSpec(0.0, 1.0, 3)
        with pytest.raises(ValueError):
            nearest_point(spec, math.nan)

    @given(st.floats(-50.0, 50.0), st.integers(2, 40))
    @settings(max_examples=60)
    def test_within_half_spacing(self, x, n):
        spec = IntervalSpec(-20.0, 20.0, n)
        near = nearest_point(spec, x)
        clipped = min(max(x, spec.a), spec.b)
        assert abs(near.value - clipped) <= spec.spacing / 2.0 + 1e-9
        assert 1 <= near.index <= n
        assert near.clamped == (x < spec.a or x > spec.b)


class TestBuiltinTables:
    def test_euclidean_entries(self):
        table = euclidean_loss_table(4)
        assert table.orientation == "loss"
        assert table.values[0, 3] == 3.0
        assert table.values[2, 1] == 1.0
        assert np.all(np.diag(table.values) == 0.0)
        assert table.values == pytest.approx(table.values.T)

    def test_jaccard_entries(self):
        table = jaccard_utility_table(4)
        assert table.orientation == "utility"
        assert np.all(np.diag(table.values) == 1.0)
        # 2*4 / (4 + 16 - 8) = 2/3
        assert table.values[1, 3] == pytest.approx(2.0 / 3.0)
        assert table.values[3, 1] == pytest.approx(2.0 / 3.0)
        assert np.all(table.values > 0.0) and np.all(table.values <= 1.0)

    def test_size_validation(self):
        with pytest.raises(ValueError):
            euclidean_loss_table(1)
        with pytest.raises(ValueError):
            jaccard_utility_table(0)


class TestGeneralBrr:
    def test_matches_manual_pipeline(self):
        eps = PrivacyBudget(1.0)
        table = euclidean_loss_table(25)
        mech, trace = general_brr(table, eps)
        manual = global_search(table, eps)
        assert trace.global_m == manual.global_m
        assert np.array_equal(trace.per_priori_m, manual.per_priori_m)
        assert np.array_equal(mech.probs, brr(table, eps, manual.global_m).probs)

    def test_jaccard_dominates_plain_rr(self):
        # with a utility table the search maximizes, and the chosen split
        # should never do worse than m = 1
        for n in (5, 20, 60):
            for eps_value in (1.0, 3.0):
                eps = PrivacyBudget(eps_value)
                table = jaccard_utility_table(n)
                mech, trace = general_brr(table, eps)
                q_brr = per_priori_errors(table, mech).mean()
                q_rr = per_priori_errors(table, brr(table, eps, 1)).mean()
                assert q_brr >= q_rr - 1e-12

    def test_fuzz_tables_validate(self, np_rng):
        for _ in range(10):
            n = int(np_rng.integers(3, 30))
            eps = PrivacyBudget(float(np_rng.uniform(0.1, 4.0)))
            table = UtilityTable(values=random_loss_table(np_rng, n), orientation="loss")
            mech, trace = general_brr(table, eps)
            report = validate_mechanism(mech)
            assert report.passed, report
            assert 1 <= trace.global_m <= n


class TestEquidistantM:
    def test_zero_budget_falls_back_to_search(self):
        assert equidistant_m(10, PrivacyBudget(0.0)) >= 1

    def test_matches_search(self):
        for n in (2, 5, 17, 64):
            for eps_value in (0.2, 1.0, 2.5):
                eps = PrivacyBudget(eps_value)
                assert equidistant_m(n, eps) == global_search(
                    euclidean_loss_table(n), eps).global_m


class TestPerturbContinuous:
    def test_release_stays_on_grid(self):
        spec = IntervalSpec(0.0, 1.0, 9)
        eps = PrivacyBudget(1.0)
        rng = RandomSource(7)
        grid = spec.grid()
        for x in np.linspace(-0.2, 1.2, 29):
            y = perturb_continuous(spec, eps, float(x), rng)
            assert np.min(np.abs(grid - y)) < 1e-12

    def test_binary_grid_frequencies(self):
        # two grid points make this plain binary randomized response:
        # stay with probability e/(e+1)
        spec = IntervalSpec(0.0, 1.0, 2)
        eps = PrivacyBudget(1.0)
        rng = RandomSource(123)
        draws = 40_000
        stays = sum(perturb_continuous(spec, eps, 0.0, rng) == 0.0
                    for _ in range(draws))
        expect = math.e / (math.e + 1.0)
        assert stays / draws == pytest.approx(expect, abs=0.01)

    def test_matches_mechanism_row(self):
        # empirical frequencies track the corresponding table row
        n, eps = 7, PrivacyBudget(0.8)
        spec = IntervalSpec(0.0, 6.0, n)
        table = euclidean_loss_table(n)
        mech = brr(table, eps, equidistant_m(n, eps))
        rng = RandomSource(42)
        draws = 60_000
        counts = np.zeros(n)
        for _ in range(draws):
            y = perturb_continuous(spec, eps, 2.0, rng)
            counts[int(round(y))] += 1
        assert counts / draws == pytest.approx(mech.probs[2], abs=0.01)

    def test_zero_budget_is_uniform(self):
        spec = IntervalSpec(0.0, 3.0, 4)
        rng = RandomSource(5)
        counts = np.zeros(4)
        for _ in range(20_000):
            y = perturb_continuous(spec, PrivacyBudget(0.0), 1.0, rng)
            counts[int(y)] += 1
        assert counts / 20_000 == pytest.approx(np.full(4, 0.25), abs=0.02)

    def test_consumes_one_uniform_per_call(self):
        spec = IntervalSpec(0.0, 1.0, 5)
        rng = RandomSource(9)
        before = rng.draws
        perturb_continuous(spec, PrivacyBudget(1.0), 0.3, rng)
        assert rng.draws == before + 1

    def test_deterministic_under_seed(self):
        spec = IntervalSpec(-2.0, 2.0, 21)
        eps = PrivacyBudget(2.0)
        a = [perturb_continuous(spec, eps, 0.77, RandomSource(1).child(i))
             for i in range(20)]
        b = [perturb_continuous(spec, eps, 0.77, RandomSource(1).child(i))
             for i in range(20)]
        assert a == b
