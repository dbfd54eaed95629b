"""Tests for eventual fixation: linear solve, Monte Carlo, information."""

import math

import numpy as np
import pytest

from wfinfo import (
    CapacityError,
    UnsupportedParametersError,
    WfParams,
    exact_fixation_curve,
    exact_fixation_prob,
    fixation_ai,
    mc_fixation_prob,
    transition_matrix,
)
from wfinfo.fixation import EXACT_SOLVE, MONTE_CARLO


class TestExactFixation:
    def test_neutral_oracle(self):
        result = exact_fixation_prob(WfParams(50), 20)
        assert result.method == EXACT_SOLVE
        assert result.p_fix == pytest.approx(0.4, abs=1e-10)
        assert result.trials is None and result.ci_halfwidth is None

    def test_boundaries(self):
        assert exact_fixation_prob(WfParams(30, sel=0.2), 0).p_fix == 0.0
        assert exact_fixation_prob(WfParams(30, sel=0.2), 30).p_fix == 1.0

    def test_neutral_curve_exact(self):
        for n in (10, 50):
            h = exact_fixation_curve(WfParams(n))
            np.testing.assert_allclose(h, np.arange(n + 1) / n, atol=1e-9)

    def test_monotone_in_initial_count(self):
        for s in (-0.1, 0.0, 0.05):
            h = exact_fixation_curve(WfParams(100, sel=s))
            assert np.all(np.diff(h) >= -1e-12)

    def test_harmonic_residual(self):
        params = WfParams(80, sel=0.07)
        h = exact_fixation_curve(params)
        p = transition_matrix(params)
        residual = np.max(np.abs(h[1:-1] - p[1:-1] @ h))
        assert residual < 1e-10

    def test_iterative_matches_dense(self):
        params = WfParams(60, sel=0.1)
        dense = exact_fixation_curve(params)
        iterative = exact_fixation_curve(params, dense_cap=10)
        np.testing.assert_allclose(iterative, dense, atol=1e-9)

    def test_capacity_error_when_fallback_disabled(self):
        with pytest.raises(CapacityError):
            exact_fixation_curve(WfParams(60, sel=0.1), dense_cap=10, iterative_fallback=False)

    def test_mutation_rejected(self):
        with pytest.raises(UnsupportedParametersError):
            exact_fixation_prob(WfParams(20, mu_small_to_a=0.01), 5)

    def test_selection_raises_fixation(self):
        neutral = exact_fixation_prob(WfParams(40), 10).p_fix
        favored = exact_fixation_prob(WfParams(40, sel=0.1), 10).p_fix
        assert favored > neutral


class TestMonteCarloFixation:
    def test_full_pool_always_fixes(self):
        result = mc_fixation_prob(WfParams(20), 20, trials=100, seed=1)
        assert result.p_fix == 1.0 and result.censored == 0
        assert result.method == MONTE_CARLO and result.trials == 100

    def test_empty_pool_never_fixes_without_backflow(self):
        result = mc_fixation_prob(WfParams(20), 0, trials=100, seed=1)
        assert result.p_fix == 0.0 and result.censored == 0

    def test_neutral_three_sigma(self):
        result = mc_fixation_prob(WfParams(20), 10, trials=100_000, seed=2024)
        assert abs(result.p_fix - 0.5) < 3 * math.sqrt(0.25 / 100_000)
        assert result.ci_halfwidth == pytest.approx(
            1.959963984540054 * math.sqrt(result.p_fix * (1 - result.p_fix) / 100_000)
        )

    def test_agrees_with_exact_solver(self):
        params = WfParams(30, sel=0.1)
        exact = exact_fixation_prob(params, 1).p_fix
        result = mc_fixation_prob(params, 1, trials=1_000_000, seed=5)
        assert abs(result.p_fix - exact) < result.ci_halfwidth

    def test_worker_count_does_not_change_result(self):
        params = WfParams(25, sel=-0.05)
        a = mc_fixation_prob(params, 12, trials=40_000, seed=9, workers=1)
        b = mc_fixation_prob(params, 12, trials=40_000, seed=9, workers=4)
        assert a == b

    def test_reproducible(self):
        params = WfParams(15, sel=0.02, mu_a_to_small=0.001, mu_small_to_a=0.001)
        a = mc_fixation_prob(params, 7, trials=5_000, seed=42)
        b = mc_fixation_prob(params, 7, trials=5_000, seed=42)
        assert a == b

    def test_censoring_reported_not_hidden(self):
        # backflow keeps 0 alive, so a tiny cap censors nearly every run
        params = WfParams(10, mu_small_to_a=0.01)
        result = mc_fixation_prob(params, 0, trials=500, seed=3, max_gens=2)
        assert result.censored is not None and result.censored > 0
        assert result.censored <= result.trials

    def test_zero_state_not_absorbing_with_backflow(self):
        # with a->A mutation the walk can leave 0 and eventually fix
        params = WfParams(5, mu_small_to_a=0.2)
        result = mc_fixation_prob(params, 0, trials=2_000, seed=8)
        assert result.p_fix > 0.5

    def test_rejects_bad_trials(self):
        with pytest.raises(ValueError):
            mc_fixation_prob(WfParams(10), 5, trials=0, seed=1)


class TestFixationAi:
    def test_neutral_is_zero(self):
        for i in (1, 10, 25):
            b = fixation_ai(WfParams(50), i)
            assert b.active.value == pytest.approx(0.0, abs=1e-9)

    def test_beneficial_positive(self):
        assert fixation_ai(WfParams(30, sel=0.1), 1).active.value > 0.0

    def test_deleterious_negative(self):
        assert fixation_ai(WfParams(30, sel=-0.1), 1).active.value < 0.0

    def test_endogenous_side_is_neutral_law(self):
        b = fixation_ai(WfParams(40, sel=0.05), 10)
        assert b.endogenous.value == pytest.approx(-math.log(0.25), abs=1e-15)

    def test_monte_carlo_method(self):
        params = WfParams(20, sel=0.1)
        exact = fixation_ai(params, 5).active.value
        mc = fixation_ai(params, 5, method=MONTE_CARLO, trials=200_000, seed=17).active.value
        assert mc == pytest.approx(exact, abs=0.05)

    def test_no_fixations_warns_and_returns_minus_inf(self):
        params = WfParams(40, sel=-0.9)
        with pytest.warns(UserWarning):
            b = fixation_ai(params, 1, method=MONTE_CARLO, trials=50, seed=6)
        assert b.active.value == -math.inf

    def test_boundary_rejected(self):
        with pytest.raises(ValueError):
            fixation_ai(WfParams(10), 0)

    def test_unknown_method_rejected(self):
        with pytest.raises(ValueError):
            fixation_ai(WfParams(10), 5, method="guesswork")
