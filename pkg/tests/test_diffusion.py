"""Tests for the diffusion-limit closed forms and the path integrator."""

import math

import numpy as np
import pytest

from wfinfo import (
    BoundaryEventError,
    DiffusionParams,
    LogBase,
    WfParams,
    drift,
    new_mutant_pfix,
    pfix_ai,
    pfix_diffusion,
    regime_report,
    sde_absorption_counts,
    sde_simulate,
    variance,
)

PFIX_ALPHA1_HALF = 0.73105857863000488  # (1 - e^-1)/(1 - e^-2), 40-digit evaluation


class TestDiffusionParams:
    def test_rejects_negative_mutation(self):
        with pytest.raises(ValueError):
            DiffusionParams(1.0, v1=-0.5)

    def test_from_chain_parameters(self):
        dp = DiffusionParams.from_wf(WfParams(100, 0.02, 0.001, 0.002))
        assert dp.alpha == pytest.approx(2.0)
        assert dp.v1 == pytest.approx(0.1)
        assert dp.v2 == pytest.approx(0.2)


class TestDriftAndVariance:
    def test_neutral_drift_vanishes(self):
        dp = DiffusionParams(0.0)
        for p in (0.0, 0.3, 1.0):
            assert drift(dp, p) == 0.0

    def test_selection_drift_value(self):
        assert drift(DiffusionParams(2.0), 0.5) == pytest.approx(0.5, abs=1e-15)

    def test_drift_fixed_boundary(self):
        assert drift(DiffusionParams(5.0), 1.0) == 0.0

    def test_mutation_pushes_off_boundaries(self):
        dp = DiffusionParams(0.0, v1=0.5, v2=0.25)
        assert drift(dp, 0.0) == 0.25
        assert drift(dp, 1.0) == -0.5

    def test_variance_values(self):
        assert variance(0.0) == 0.0
        assert variance(0.5) == pytest.approx(0.25, abs=1e-16)
        assert variance(1.0) == 0.0

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            variance(1.2)


class TestPfixDiffusion:
    def test_neutral_returns_initial_frequency(self):
        assert pfix_diffusion(0.0, 0.3) == 0.3

    def test_continuous_at_zero_selection(self):
        for p0 in np.linspace(0.05, 0.95, 10):
            for alpha in (1e-9, -1e-9):
                assert abs(pfix_diffusion(alpha, float(p0)) - p0) < 1e-8

    def test_unit_selection_value(self):
        assert pfix_diffusion(1.0, 0.5) == pytest.approx(PFIX_ALPHA1_HALF, abs=1e-14)

    def test_boundary_frequencies(self):
        assert pfix_diffusion(2.5, 0.0) == 0.0
        assert pfix_diffusion(2.5, 1.0) == 1.0

    def test_increasing_in_alpha(self):
        values = [pfix_diffusion(a, 0.3) for a in np.linspace(-5, 5, 41)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_increasing_in_p0(self):
        values = [pfix_diffusion(1.5, p) for p in np.linspace(0.0, 1.0, 21)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_extreme_selection_stays_finite(self):
        assert pfix_diffusion(1000.0, 0.5) == pytest.approx(1.0, abs=1e-12)
        assert pfix_diffusion(-1000.0, 0.5) == pytest.approx(0.0, abs=1e-12)
        assert not math.isnan(pfix_diffusion(-745.0, 0.999))

    def test_matches_naive_formula_in_safe_range(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            alpha = float(rng.uniform(-20, 20))
            if abs(alpha) < 1e-6:
                continue
            p0 = float(rng.uniform(0.01, 0.99))
            naive = (1 - math.exp(-2 * alpha * p0)) / (1 - math.exp(-2 * alpha))
            assert pfix_diffusion(alpha, p0) == pytest.approx(naive, rel=1e-12)


class TestPfixAi:
    def test_neutral_is_zero(self):
        assert pfix_ai(0.0, 0.4).value == 0.0

    def test_unit_selection_value(self):
        # ln(0.7310585786300049 / 0.5), 40-digit evaluation
        assert pfix_ai(1.0, 0.5).value == pytest.approx(0.37988549304172248, abs=1e-12)

    def test_deleterious_is_negative(self):
        assert pfix_ai(-1.0, 0.5).value < 0.0

    def test_sign_pattern(self):
        for p0 in (0.1, 0.5, 0.9):
            assert pfix_ai(2.0, p0).value > 0.0
            assert pfix_ai(-2.0, p0).value < 0.0
            assert pfix_ai(0.0, p0).value == 0.0

    def test_boundary_rejected(self):
        with pytest.raises(BoundaryEventError):
            pfix_ai(1.0, 0.0)

    def test_bits_conversion(self):
        nats = pfix_ai(1.0, 0.5, LogBase.NATS).value
        bits = pfix_ai(1.0, 0.5, LogBase.BITS).value
        assert bits * math.log(2) == pytest.approx(nats, abs=1e-12)


class TestNewMutantPfix:
    def test_neutral_limit(self):
        assert new_mutant_pfix(100, 0.0) == pytest.approx(0.01, abs=1e-15)

    def test_beneficial_value(self):
        # (1 - e^-0.02)/(1 - e^-20), 40-digit evaluation
        assert new_mutant_pfix(1000, 0.01) == pytest.approx(0.019801326734058274, abs=1e-14)

    def test_beneficial_approximation(self):
        for n, s in [(1000, 0.01), (2000, 0.01), (5000, 0.005)]:
            assert abs(new_mutant_pfix(n, s) - 2 * s) / (2 * s) < 0.05

    def test_deleterious_value(self):
        # 40-digit evaluation; close to 2|s| e^{-2N|s|}
        exact = new_mutant_pfix(1000, -0.01)
        assert exact == pytest.approx(4.1638065260083220e-11, rel=1e-12)
        approx = 2 * 0.01 * math.exp(-20.0)
        assert exact / approx == pytest.approx(1.0, abs=0.1)

    def test_rejects_tiny_population(self):
        with pytest.raises(ValueError):
            new_mutant_pfix(1, 0.1)


class TestRegimeReport:
    def test_nearly_neutral(self):
        report = regime_report(10_000, 1e-6)
        assert report.regime == "nearly_neutral"
        assert report.p_fix_approx == pytest.approx(1e-4)
        assert report.ai_approx.value == 0.0

    def test_beneficial(self):
        report = regime_report(10_000, 0.001)
        assert report.regime == "beneficial"
        assert report.p_fix_approx == pytest.approx(0.002)
        assert report.ai_approx.value == pytest.approx(math.log(20.0), abs=1e-12)

    def test_deleterious(self):
        report = regime_report(10_000, -0.001)
        assert report.regime == "deleterious"
        assert report.p_fix_approx == pytest.approx(0.002 * math.exp(-20.0), rel=1e-12)
        assert report.ai_approx.value == pytest.approx(-20.0 + math.log(20.0), abs=1e-12)

    def test_unclassified(self):
        report = regime_report(100, 0.5)
        assert report.regime == "unclassified"
        assert report.p_fix_approx is None and report.ai_approx is None

    def test_exact_formula_always_reported(self):
        report = regime_report(100, 0.5)
        assert report.p_fix_exact_formula == pytest.approx(new_mutant_pfix(100, 0.5))

    def test_bits_base(self):
        report = regime_report(10_000, 0.001, LogBase.BITS)
        assert report.ai_approx.value == pytest.approx(math.log2(20.0), abs=1e-12)


class TestSdeSimulate:
    def test_constant_zero_path(self):
        path = sde_simulate(DiffusionParams(1.0), 0.0, 1e-2, 1.0, rng=1)
        np.testing.assert_array_equal(path, np.zeros(101))

    def test_constant_one_path(self):
        path = sde_simulate(DiffusionParams(-2.0), 1.0, 1e-2, 1.0, rng=1)
        np.testing.assert_array_equal(path, np.ones(101))

    def test_path_length_and_bounds(self):
        path = sde_simulate(DiffusionParams(0.5), 0.5, 1e-3, 2.0, rng=7)
        assert len(path) == 2001
        assert path.min() >= 0.0 and path.max() <= 1.0

    def test_absorption_persists(self):
        path = sde_simulate(DiffusionParams(0.0), 0.5, 1e-2, 50.0, rng=3)
        hits = np.nonzero((path == 0.0) | (path == 1.0))[0]
        assert hits.size > 0
        first = hits[0]
        assert np.all(path[first:] == path[first])

    def test_reproducible(self):
        dp = DiffusionParams(1.0, v1=0.1, v2=0.1)
        a = sde_simulate(dp, 0.4, 1e-3, 1.0, rng=11)
        b = sde_simulate(dp, 0.4, 1e-3, 1.0, rng=11)
        np.testing.assert_array_equal(a, b)

    def test_mutation_boundary_not_absorbing(self):
        # strong backflow keeps the path away from permanent extinction
        dp = DiffusionParams(0.0, v1=0.0, v2=5.0)
        path = sde_simulate(dp, 0.0, 1e-3, 2.0, rng=5)
        assert path[-1] > 0.0

    def test_rejects_bad_steps(self):
        with pytest.raises(ValueError):
            sde_simulate(DiffusionParams(1.0), 0.5, -1e-3, 1.0, rng=0)


class TestSdeEnsemble:
    def test_absorbed_fraction_matches_closed_form(self):
        hi, lo, censored = sde_absorption_counts(
            DiffusionParams(1.0), 0.5, 1e-3, 50.0, n_paths=4000, seed=2030
        )
        assert censored == 0
        target = pfix_diffusion(1.0, 0.5)
        assert abs(hi / 4000 - target) < 4 * math.sqrt(target * (1 - target) / 4000)
        assert hi + lo == 4000

    def test_worker_count_does_not_change_result(self):
        dp = DiffusionParams(0.5)
        a = sde_absorption_counts(dp, 0.3, 1e-2, 20.0, n_paths=20_000, seed=4, workers=1)
        b = sde_absorption_counts(dp, 0.3, 1e-2, 20.0, n_paths=20_000, seed=4, workers=3)
        assert a == b


class TestChainConvergence:
    def test_gap_shrinks_with_population_size(self):
        from wfinfo import exact_fixation_prob

        alpha, p0 = 1.0, 0.5
        target = pfix_diffusion(alpha, p0)
        gaps = []
        for n in (20, 50, 100):
            i = math.ceil(p0 * n - 1e-9)
            gaps.append(abs(exact_fixation_prob(WfParams(n, sel=alpha / n), i).p_fix - target))
        assert gaps[0] > gaps[1] > gaps[2]
