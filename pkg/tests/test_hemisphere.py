"""Hemisphere sampling, bound certificates, root location."""

import numpy as np
import pytest

from vsheet.hemisphere import (
    NoRootFound,
    SampleStrategy,
    certify_sandwich,
    certify_simple_root,
    certify_weight_bounds,
    locate_roots,
    root_points,
    sample_hemisphere,
)
from vsheet.symbols import Frequency, PhysicalParams, big_sigma, root_constants

M2 = PhysicalParams(v=2.0, c=1.0)
ELL = PhysicalParams(v=1.0, c=1.0)

Y2_M2 = 0.93642638492427126  # mpmath oracle
Y1_M1 = 0.48586827175664568


class TestSampling:
    @pytest.mark.parametrize("strategy", list(SampleStrategy))
    def test_size_and_unit_norm(self, strategy):
        sample = sample_hemisphere(500, strategy, 1e-6, M2, seed=3)
        assert len(sample) == 500
        lam = np.asarray(sample.freqs.lam)
        assert np.max(np.abs(lam - 1.0)) < 1e-12

    @pytest.mark.parametrize("strategy", list(SampleStrategy))
    def test_gamma_floor(self, strategy):
        floor = 1e-4
        sample = sample_hemisphere(512, strategy, floor, M2, seed=1)
        assert np.min(np.asarray(sample.freqs.gamma)) >= floor * (1.0 - 1e-12)

    def test_stratified_fraction_near_roots(self):
        sample = sample_hemisphere(2000, SampleStrategy.STRATIFIED_NEAR_ROOTS, 1e-6, M2, seed=0)
        g = np.asarray(sample.freqs.gamma)
        d = np.asarray(sample.freqs.delta)
        e = np.asarray(sample.freqs.eta)
        near = 0
        for root in root_points(M2):
            dist = np.sqrt((g - root[0]) ** 2 + (d - root[1]) ** 2 + (e - root[2]) ** 2)
            near += int(np.sum(dist < 0.1))
        assert near >= 0.25 * len(sample), f"only {near} of {len(sample)} near roots"

    @pytest.mark.parametrize("strategy", list(SampleStrategy))
    def test_monotone_refinement(self, strategy):
        small = sample_hemisphere(256, strategy, 1e-6, M2, seed=7)
        big = sample_hemisphere(512, strategy, 1e-6, M2, seed=7)
        a = np.column_stack(
            [np.asarray(small.freqs.gamma), np.asarray(small.freqs.delta), np.asarray(small.freqs.eta)]
        )
        b = np.column_stack(
            [np.asarray(big.freqs.gamma), np.asarray(big.freqs.delta), np.asarray(big.freqs.eta)]
        )
        np.testing.assert_array_equal(a, b[: len(small)])

    def test_seed_changes_quasi_random(self):
        a = sample_hemisphere(64, SampleStrategy.QUASI_RANDOM, 1e-6, M2, seed=0)
        b = sample_hemisphere(64, SampleStrategy.QUASI_RANDOM, 1e-6, M2, seed=1)
        assert not np.allclose(np.asarray(a.freqs.delta), np.asarray(b.freqs.delta))

    def test_stratified_needs_params(self):
        with pytest.raises(ValueError):
            sample_hemisphere(64, SampleStrategy.STRATIFIED_NEAR_ROOTS, 1e-6, None)

    def test_root_points_weakly_stable(self):
        pts = root_points(M2)
        assert len(pts) == 4
        for g, d, e in pts:
            assert g == 0.0
            assert abs(np.hypot(d, e) - 1.0) < 1e-14
            assert abs(abs(d) - Y2_M2 * abs(e)) < 1e-12

    def test_root_points_elliptic(self):
        pts = root_points(ELL)
        assert len(pts) == 2
        for g, d, e in pts:
            assert d == 0.0 and g > 0
            assert abs(g - Y1_M1 * abs(e)) < 1e-12


class TestSandwich:
    def test_trivial_direction(self):
        # at (1,0,0): Sigma = 1, weight = 1, Lambda = 1 -> ratio exactly 1
        sample = sample_hemisphere(1, SampleStrategy.UNIFORM_ANGULAR, 1e-6, M2, seed=0)
        object.__setattr__(sample, "freqs", Frequency(1.0, 0.0, 0.0))
        cert = certify_sandwich(sample, M2)
        assert cert.empirical_min == pytest.approx(1.0, rel=1e-12)
        assert cert.empirical_max == pytest.approx(1.0, rel=1e-12)

    def test_passes_at_moderate_size(self):
        sample = sample_hemisphere(10_000, SampleStrategy.STRATIFIED_NEAR_ROOTS, 1e-6, M2, seed=0)
        cert = certify_sandwich(sample, M2)
        assert cert.passed
        assert cert.empirical_min > 0
        assert cert.empirical_max / cert.empirical_min < 1e4
        assert cert.extras["homogeneity_deviation"] <= 1e-12
        assert cert.mach == pytest.approx(2.0)

    def test_rejects_elliptic(self):
        sample = sample_hemisphere(16, SampleStrategy.UNIFORM_ANGULAR, 1e-6, ELL, seed=0)
        with pytest.raises(ValueError):
            certify_sandwich(sample, ELL)

    def test_json_record_shape(self):
        sample = sample_hemisphere(128, SampleStrategy.QUASI_RANDOM, 1e-6, M2, seed=0)
        rec = certify_sandwich(sample, M2).to_json_dict()
        for key in ("ratio_name", "empirical_min", "empirical_max", "sample_size", "gamma_floor", "mach", "pass"):
            assert key in rec, f"missing {key}"
        assert isinstance(rec["pass"], bool)


class TestWeightBounds:
    def test_all_pass(self):
        sample = sample_hemisphere(10_000, SampleStrategy.STRATIFIED_NEAR_ROOTS, 1e-6, M2, seed=0)
        certs = certify_weight_bounds(sample, M2)
        names = [c.ratio_name for c in certs]
        assert names == [
            "weight_over_gamma",
            "weight_over_lambda",
            "weight_over_root_distance",
            "weight_over_lambda_far",
        ]
        assert all(c.passed for c in certs)

    def test_gamma_bound_is_sharp_from_above(self):
        # |sigma| / gamma >= 1 with equality approached along eta = delta = 0
        sample = sample_hemisphere(10_000, SampleStrategy.STRATIFIED_NEAR_ROOTS, 1e-6, M2, seed=0)
        cert = next(
            c for c in certify_weight_bounds(sample, M2) if c.ratio_name == "weight_over_gamma"
        )
        assert cert.empirical_min >= 1.0 - 1e-9
        assert cert.empirical_min < 1.5

    def test_near_tube_comparable_to_distance(self):
        sample = sample_hemisphere(20_000, SampleStrategy.STRATIFIED_NEAR_ROOTS, 1e-6, M2, seed=2)
        cert = next(
            c
            for c in certify_weight_bounds(sample, M2)
            if c.ratio_name == "weight_over_root_distance"
        )
        assert cert.passed
        assert cert.empirical_max / cert.empirical_min < 10.0


class TestLocateRoots:
    @pytest.mark.parametrize("mach,y2", [(1.5, 0.2961795736232002), (2.0, Y2_M2), (3.0, 1.9792012201142612)])
    def test_weakly_stable(self, mach, y2):
        params = PhysicalParams(v=mach, c=1.0)
        found = locate_roots(params)
        assert abs(abs(found) - y2) / y2 < 1e-8

    @pytest.mark.parametrize("mach,y1", [(0.5, 0.40523272618718129), (1.0, Y1_M1)])
    def test_elliptic(self, mach, y1):
        params = PhysicalParams(v=mach, c=1.0)
        found = locate_roots(params)
        assert abs(found - y1) / y1 < 1e-8

    def test_eta_sign_flips_root(self):
        up = locate_roots(M2, eta_sign=1.0)
        down = locate_roots(M2, eta_sign=-1.0)
        assert up == pytest.approx(-down, rel=1e-10)

    def test_scales_with_sound_speed(self):
        fast = PhysicalParams(v=6.0, c=3.0)
        found = locate_roots(fast)
        assert abs(abs(found) - 3.0 * Y2_M2) / (3.0 * Y2_M2) < 1e-8

    def test_no_root_when_threshold_absurd(self):
        with pytest.raises(NoRootFound):
            locate_roots(M2, zero_threshold=1e-30)

    def test_search_really_found_a_zero(self):
        found = locate_roots(M2)
        eta = 1.0 / np.hypot(found, 1.0)
        val = big_sigma(Frequency(0.0, found * eta, eta), M2)
        assert abs(val) < 1e-8


class TestSimpleRoot:
    def test_certifies_m2(self):
        cert = certify_simple_root(M2)
        assert cert.passed
        assert cert.extras["band_ratio"] <= 2.0
        assert cert.extras["center_drift"] <= 0.05
        assert cert.empirical_min > 0

    def test_quotient_level_matches_symbol_slope(self):
        # |Sigma| / |tau - i c Y2 eta| near the root ~ |d Sigma / d tau|
        cert = certify_simple_root(M2)
        level = cert.extras["quotient_level"]
        r = 1e-6
        eta0 = 1.0 / np.sqrt(1.0 + (Y2_M2) ** 2)
        probe = Frequency(r, Y2_M2 * eta0, eta0)
        slope = abs(big_sigma(probe, M2)) / r
        assert level == pytest.approx(slope, rel=1e-2)

    def test_off_curve_center_rejected(self):
        with pytest.raises(ValueError):
            certify_simple_root(M2, center=Frequency(0.0, 0.5, 0.8))

    def test_on_curve_center_accepted(self):
        eta0 = 0.25
        cert = certify_simple_root(M2, center=Frequency(0.0, Y2_M2 * eta0, eta0))
        assert cert.passed

    def test_rejects_elliptic(self):
        with pytest.raises(ValueError):
            certify_simple_root(ELL)

    def test_band_tightens_with_radius(self):
        wide = certify_simple_root(M2, radius=1e-2)
        tight = certify_simple_root(M2, radius=1e-3)
        assert tight.extras["band_ratio"] <= wide.extras["band_ratio"] + 1e-12
