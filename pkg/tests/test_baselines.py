"""PrivSPRT baseline: statistic, stopping rule, and threshold calibration."""

import itertools
import math
from dataclasses import replace

import numpy as np
import pytest

from dpsprt.baselines import (
    CalibrationError,
    PrivSprtConfig,
    calibrate_privsprt,
    default_threshold_grid,
    llr_steps,
    run_privsprt,
    truncated_llr_path,
)
from dpsprt.dp_sprt import Classical, TestConfig, gaussian_scales, run_test
from dpsprt.exp_family import HypothesisPair, log_partition
from dpsprt.harness import bernoulli_stream
from dpsprt.rngcore import StreamKey, derive

HYP = HypothesisPair.of(0.3, 0.7)
LLR1 = math.log(7 / 3)


def _zero_noise(a=None, b=None, trunc_a=50.0):
    return PrivSprtConfig(HYP, 0.0, 0.0, trunc_a, a, b)


def _obs(p, tag):
    return bernoulli_stream(p, derive(StreamKey(606, 0, tag)))


class TestConfigDefaults:
    def test_from_epsilon_scales(self):
        cfg = PrivSprtConfig.from_epsilon(HYP, 1.0, 1e-5)
        sy, sz = gaussian_scales(1.0, 1e-5)
        assert cfg.sigma1 == pytest.approx(2 * math.sqrt(2) * sz)
        assert cfg.sigma2 == pytest.approx(2 * math.sqrt(2) * sy)
        assert cfg.trunc_a == 1.0

    def test_validation(self):
        with pytest.raises(ValueError):
            PrivSprtConfig(HYP, -1.0, 1.0)
        with pytest.raises(ValueError):
            PrivSprtConfig(HYP, 1.0, 1.0, trunc_a=0.0)

    def test_uncalibrated_run_rejected(self):
        with pytest.raises(ValueError):
            run_privsprt(_zero_noise(), iter([1, 0]))


class TestStatistic:
    def test_step_values_untruncated_on_standard_instance(self):
        l1, l0 = llr_steps(HYP)
        assert l1 == pytest.approx(LLR1, rel=1e-14)
        assert l0 == pytest.approx(-LLR1, rel=1e-14)
        # truncation at A = 1 is immaterial: both magnitudes below 1
        assert max(l1, -l0) < 1.0

    def test_path_matches_exponential_family_algebra(self):
        """Untruncated statistic equals dtheta * sum(X) - n * (b1 - b0)."""
        rng = np.random.default_rng(3)
        bits = (rng.random(400) < 0.5).astype(int)
        path = truncated_llr_path(HYP, bits, trunc_a=50.0)
        n = np.arange(1, 401)
        want = HYP.dtheta * np.cumsum(bits) - n * (
            log_partition(HYP.theta1) - log_partition(HYP.theta0)
        )
        assert np.max(np.abs(path - want)) < 1e-10

    def test_truncation_clamps(self):
        wide = HypothesisPair.of(0.01, 0.99)
        path = truncated_llr_path(wide, [1, 1, 0], trunc_a=1.0)
        assert np.allclose(path, [1.0, 2.0, 1.0])


class TestZeroNoiseRuns:
    def test_all_ones_crosses_at_three(self):
        cfg = _zero_noise(a=50.0, b=3 * LLR1 - 1e-9)
        out = run_privsprt(cfg, itertools.repeat(1))
        assert (out.tau, out.decision) == (3, 1)

    def test_matches_classical_sprt_decisions(self):
        """With thresholds (log(1/beta), log(1/alpha)) and no truncation the
        rule is the classical test in likelihood-ratio coordinates."""
        alpha = beta = 0.05
        priv = _zero_noise(a=math.log(1 / beta), b=math.log(1 / alpha))
        classical = TestConfig(HYP, alpha, beta, Classical())
        for tag, p in ((0, 0.3), (1, 0.7), (2, 0.5), (3, 0.42)):
            bits = list(_obs(p, tag).take(3000))
            a = run_privsprt(priv, iter(bits))
            b = run_test(classical, iter(bits))
            assert (a.tau, a.decision) == (b.tau, b.decision)

    def test_upper_check_first_on_ties(self):
        # both thresholds at 0: a 1 bit satisfies both comparisons at n=1
        cfg = _zero_noise(a=0.0, b=0.0)
        out = run_privsprt(cfg, iter([1]))
        assert (out.tau, out.decision) == (1, 1)

    def test_horizon_exhaustion(self):
        cfg = replace(_zero_noise(a=100.0, b=100.0), horizon=10)
        out = run_privsprt(cfg, itertools.cycle([0, 1]))
        assert out.exhausted and out.tau == 10 and out.decision is None


class TestNoisyRuns:
    def test_deterministic_given_seed(self):
        cfg = replace(PrivSprtConfig.from_epsilon(HYP, 1.0, seed=9), thresh_a=375.0, thresh_b=375.0)
        bits = list(_obs(0.3, 7).take(5000))
        assert run_privsprt(cfg, iter(bits)) == run_privsprt(cfg, iter(bits))

    def test_seed_changes_noise(self):
        base = replace(PrivSprtConfig.from_epsilon(HYP, 1.0), thresh_a=375.0, thresh_b=375.0)
        bits = list(_obs(0.3, 8).take(20000))
        a = run_privsprt(replace(base, seed=1), iter(bits))
        b = run_privsprt(replace(base, seed=2), iter(bits))
        assert (a.tau, a.decision) != (b.tau, b.decision)


class TestDefaultGrid:
    def test_bracketing_ladder(self):
        cfg = PrivSprtConfig.from_epsilon(HYP, 1.0)
        grid = default_threshold_grid(cfg, 0.05)
        assert len(grid) == 36
        w = math.log(1 / 0.05)
        assert (w, w) in grid
        assert max(b for _, b in grid) == pytest.approx(w * 5**5)


class TestCalibration:
    def test_zero_noise_selects_wald_point_or_smaller(self):
        cfg = _zero_noise()
        wald = (math.log(1 / 0.05), math.log(1 / 0.05))
        grid = [wald, (2 * wald[0], 2 * wald[1]), (4 * wald[0], wald[1])]
        cal = calibrate_privsprt(cfg, 0.05, 0.05, grid=grid, pilot_trials=100,
                                 rng=derive(StreamKey(71)))
        assert cal.thresh_a + cal.thresh_b <= wald[0] + wald[1] + 1e-12
        assert cal.pilot_type1 <= 0.05 and cal.pilot_type2 <= 0.05

    def test_single_infeasible_point_fails(self):
        cfg = _zero_noise()
        with pytest.raises(CalibrationError):
            calibrate_privsprt(cfg, 0.05, 0.05, grid=[(0.0, 0.0)], pilot_trials=100,
                               rng=derive(StreamKey(72)))

    def test_deterministic_given_grid_and_seed(self):
        cfg = PrivSprtConfig.from_epsilon(HYP, 5.0)
        kw = dict(target_alpha=0.05, target_beta=0.05, pilot_trials=60)
        a = calibrate_privsprt(cfg, rng=derive(StreamKey(73)), **kw)
        b = calibrate_privsprt(cfg, rng=derive(StreamKey(73)), **kw)
        assert a == b

    def test_noisy_calibration_lands_above_noise_floor(self):
        cfg = PrivSprtConfig.from_epsilon(HYP, 1.0)
        cal = calibrate_privsprt(cfg, 0.05, 0.05, pilot_trials=100, rng=derive(StreamKey(74)))
        # thresholds a handful of noise standard deviations out
        assert min(cal.thresh_a, cal.thresh_b) > 2 * math.hypot(cfg.sigma1, cfg.sigma2)

    def test_undecidable_horizon_is_infeasible(self):
        cfg = replace(PrivSprtConfig.from_epsilon(HYP, 1.0), horizon=5)
        with pytest.raises(CalibrationError):
            calibrate_privsprt(cfg, 0.05, 0.05, grid=[(400.0, 400.0)], pilot_trials=20,
                               rng=derive(StreamKey(75)))

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            calibrate_privsprt(_zero_noise(), 0.05, 0.05, grid=[], pilot_trials=10,
                               rng=derive(StreamKey(76)))
