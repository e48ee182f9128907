"""Decoder and Monte Carlo estimator tests."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.stats import binomtest

from ccl.catalog import catalog_get
from ccl.detector import (
    McConfig,
    estimate,
    ml_decode,
    ml_decode_via_likelihood,
    sweep,
    wilson_interval,
)
from ccl.errors import EmptyGrid, InvalidSampleCount
from ccl.geometry import Constellation, angular_patch_2d, patch_angular_distance
from ccl.noise import NoiseModel, sample_batch
from ccl.rng import RngStream
from helpers import random_constellation

ASYM4 = catalog_get("asym4").constellation


class TestMlDecode:
    def test_nearest_point(self):
        assert ml_decode(ASYM4, [0.6, 0.0]) == 1

    def test_tie_breaks_to_lowest_index(self):
        assert ml_decode(ASYM4, [0.5, 0.0]) == 0

    def test_far_left_point(self):
        # Distances to the four points: 5.001, 6.001, 5.081, 5.122.
        assert ml_decode(ASYM4, [-5.0, 0.1]) == 0

    def test_likelihood_route_same_decision(self):
        m = NoiseModel(gamma=0.7, d=2)
        assert ml_decode_via_likelihood(ASYM4, [0.6, 0.0], m) == ml_decode(ASYM4, [0.6, 0.0])

    def test_likelihood_tie_matches(self):
        m = NoiseModel(gamma=2.0, d=2)
        assert ml_decode_via_likelihood(ASYM4, [0.5, 0.0], m) == 0

    def test_agreement_on_random_inputs(self):
        rng = np.random.default_rng(44)
        for gamma in (0.1, 1.0, 10.0):
            m = NoiseModel(gamma=gamma, d=2)
            ys = rng.uniform(-4, 4, size=(1000, 2))
            for y in ys:
                assert ml_decode(ASYM4, y) == ml_decode_via_likelihood(ASYM4, y, m)


class TestWilson:
    def test_against_reference_values(self):
        # Frozen from an independent implementation of the score interval.
        assert wilson_interval(50, 100) == pytest.approx(
            (0.4038315303659956, 0.5961684696340044), abs=1e-12
        )
        assert wilson_interval(3, 17) == pytest.approx(
            (0.061911266376209945, 0.4102945856883412), abs=1e-12
        )

    def test_zero_successes(self):
        lo, hi = wilson_interval(0, 100)
        assert lo == 0.0
        assert hi == pytest.approx(0.03699349820698568, abs=1e-12)

    def test_no_trials_is_nan(self):
        lo, hi = wilson_interval(0, 0)
        assert math.isnan(lo) and math.isnan(hi)


class TestEstimate:
    def test_single_point_never_errs(self):
        c = Constellation([[0.0, 0.0]])
        est = estimate(c, NoiseModel(5.0, 2), McConfig(n_samples=2000, batch_size=500, seed=1))
        assert est.avg_error == 0.0
        assert est.avg_correct == 1.0

    def test_deterministic(self):
        cfg = McConfig(n_samples=30_000, batch_size=7_000, seed=99)
        m = NoiseModel(0.3, 2)
        a = estimate(ASYM4, m, cfg)
        b = estimate(ASYM4, m, cfg)
        assert a.avg_error == b.avg_error
        assert (a.per_symbol_counts == b.per_symbol_counts).all()
        assert (a.per_symbol_error == b.per_symbol_error).all()

    def test_counts_sum_to_trials(self):
        cfg = McConfig(n_samples=25_000, batch_size=9_000, seed=3)
        est = estimate(ASYM4, NoiseModel(1.0, 2), cfg)
        assert est.per_symbol_counts.sum() == cfg.n_samples

    def test_complement_exact(self):
        est = estimate(ASYM4, NoiseModel(1.0, 2), McConfig(n_samples=10_000, seed=5))
        assert est.avg_correct == 1.0 - est.avg_error
        mask = est.per_symbol_counts > 0
        assert (est.per_symbol_correct[mask] == 1.0 - est.per_symbol_error[mask]).all()

    def test_average_is_count_weighted_per_symbol(self):
        est = estimate(ASYM4, NoiseModel(0.5, 2), McConfig(n_samples=20_000, seed=6))
        weights = est.per_symbol_counts / est.n_samples
        assert abs(est.avg_error - float(np.dot(weights, est.per_symbol_error))) < 1e-12

    def test_priors_steer_symbol_draws(self):
        priors = np.array([0.7, 0.1, 0.1, 0.1])
        cfg = McConfig(n_samples=50_000, seed=8, priors=priors)
        est = estimate(ASYM4, NoiseModel(0.5, 2), cfg)
        freq = est.per_symbol_counts / est.n_samples
        # Frequencies match priors within a generous multinomial bound.
        assert np.abs(freq - priors).max() < 0.01

    def test_scale_equivariance_is_exact_for_power_of_two(self):
        rng = np.random.default_rng(123)
        c = random_constellation(rng, m=5)
        cfg = McConfig(n_samples=20_000, batch_size=5_000, seed=77)
        base = estimate(c, NoiseModel(0.8, 2), cfg)
        for s in (0.5, 2.0):
            scaled = estimate(Constellation(s * c.points), NoiseModel(s * 0.8, 2), cfg)
            assert scaled.avg_error == base.avg_error
            assert (scaled.per_symbol_counts == base.per_symbol_counts).all()

    def test_wilson_interval_attached(self):
        est = estimate(ASYM4, NoiseModel(0.3, 2), McConfig(n_samples=40_000, seed=4))
        errors = int(round(est.avg_error * est.n_samples))
        ci = binomtest(errors, est.n_samples).proportion_ci(0.95, method="wilson")
        assert est.avg_error_ci95[0] == pytest.approx(float(ci.low), abs=1e-12)
        assert est.avg_error_ci95[1] == pytest.approx(float(ci.high), abs=1e-12)

    def test_rejects_bad_config(self):
        with pytest.raises(InvalidSampleCount):
            McConfig(n_samples=0)
        with pytest.raises(InvalidSampleCount):
            McConfig(batch_size=0)


class TestSweep:
    def test_single_gamma_equals_estimate(self):
        cfg = McConfig(n_samples=15_000, batch_size=4_000, seed=11)
        [(gamma, est)] = sweep(ASYM4, [0.4], cfg)
        direct = estimate(ASYM4, NoiseModel(0.4, 2), cfg)
        assert gamma == 0.4
        assert est.avg_error == direct.avg_error
        assert (est.per_symbol_counts == direct.per_symbol_counts).all()

    def test_entries_are_independent_streams(self):
        cfg = McConfig(n_samples=5_000, seed=11)
        res = sweep(ASYM4, [0.4, 0.4001], cfg)
        # Nearly equal gammas still consume disjoint substreams.
        assert res[0][1].per_symbol_counts.tolist() != res[1][1].per_symbol_counts.tolist()

    def test_empty_grid(self):
        with pytest.raises(EmptyGrid):
            sweep(ASYM4, [], McConfig(n_samples=10))
        with pytest.raises(EmptyGrid):
            sweep(ASYM4, [0.0, 1.0], McConfig(n_samples=10))

    def test_large_noise_trend_toward_quarter(self):
        # Average correct rate falls along the growing-noise grid and
        # settles near the 1/4 angular limit.
        grid = [0.2, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 12.0, 20.0, 30.0]
        res = sweep(ASYM4, grid, McConfig(n_samples=50_000, seed=13))
        correct = [est.avg_correct for _, est in res]
        slack = [3 * est.avg_ci95_halfwidth for _, est in res]
        for k in range(len(correct) - 1):
            assert correct[k + 1] <= correct[k] + slack[k] + slack[k + 1]
        assert correct[0] > 0.5
        assert abs(correct[-1] - 0.25) < 0.02


class TestFarFieldConsistency:
    def test_decoded_direction_lands_near_cone(self):
        # Decoding far-field draws must match the recession-cone geometry.
        c = ASYM4
        gamma = 1e4
        gen = RngStream(314, 0).generator()
        model = NoiseModel(gamma, 2)
        sym = gen.integers(0, c.m, size=20_000)
        noise = sample_batch(model, gen, 20_000)
        y = c.points[sym] + noise
        diff = y[:, None, :] - c.points[None, :, :]
        decoded = ((diff**2).sum(axis=2)).argmin(axis=1)
        patches = [angular_patch_2d(c, i) for i in range(c.m)]
        far = np.linalg.norm(noise, axis=1) > 1e3 * c.diameter()
        assert far.sum() > 10_000
        angles = np.arctan2(noise[:, 1], noise[:, 0])
        for k in np.nonzero(far)[0]:
            assert patch_angular_distance(patches[decoded[k]], float(angles[k])) < 1e-2
