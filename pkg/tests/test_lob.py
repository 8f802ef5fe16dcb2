import math
from dataclasses import replace

import numpy as np
import pytest

from fblsec.channels import sample_rician, steering_vector, RicianSpec
from fblsec.lob import (
    LobConfig,
    an_basis,
    lob_beamformer,
    optimize_an_fraction,
    run_lob,
    sinr_pair,
)
from fblsec.numerics import RngSeed
from fblsec.secrecy import ConstraintPair

CP = ConstraintPair(1e-6, 0.5)


def make_config(**overrides) -> LobConfig:
    base = dict(
        n_antennas=4,
        theta_bob=0.0,
        theta_eve=math.radians(20.0),
        location_error_std=0.0,
        k_factor_bob=10.0,
        k_factor_eve=1.0,
        total_power=1.0,
        an_fraction=0.3,
        noise_power_bob=0.05,
        noise_power_eve=0.05,
        blocklength=500,
        constraints=CP,
        trials=400,
        seed=RngSeed(515, 0),
    )
    base.update(overrides)
    return LobConfig(**base)


class TestBeamformer:
    @pytest.mark.parametrize("theta", [-0.9, 0.0, 0.3, 1.1])
    def test_unit_norm(self, theta):
        assert np.linalg.norm(lob_beamformer(theta, 6)) == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize("n", [2, 4, 8])
    def test_full_gain_on_matched_los(self, n):
        theta = 0.37
        a = steering_vector(theta, n)
        w = lob_beamformer(theta, n)
        assert abs(np.vdot(a, w)) ** 2 == pytest.approx(n, rel=1e-12)

    def test_single_antenna(self):
        w = lob_beamformer(0.5, 1)
        assert np.array_equal(w, np.ones(1, dtype=complex))


class TestAnBasis:
    @pytest.mark.parametrize("n", [2, 3, 4, 8])
    @pytest.mark.parametrize("theta", [-0.7, 0.0, 0.45])
    def test_orthonormal_null_space(self, n, theta):
        basis = an_basis(theta, n)
        assert basis.shape == (n, n - 1)
        a = steering_vector(theta, n)
        assert np.linalg.norm(a.conj() @ basis) < 1e-10
        gram = basis.conj().T @ basis
        assert np.linalg.norm(gram - np.eye(n - 1)) < 1e-10

    def test_single_antenna_rejected(self):
        with pytest.raises(ValueError):
            an_basis(0.0, 1)


class TestSinrPair:
    def test_pure_los_bob_sees_no_artificial_noise(self):
        cfg = make_config(k_factor_bob=math.inf)
        h_bob = steering_vector(cfg.theta_bob, cfg.n_antennas)
        h_eve = sample_rician(
            RicianSpec(1.0, cfg.theta_eve, cfg.n_antennas), RngSeed(9, 0)
        )
        for phi in (0.0, 0.3, 0.7):
            sinr_bob, _ = sinr_pair(h_bob, h_eve, replace(cfg, an_fraction=phi))
            expected = (1.0 - phi) * cfg.total_power * cfg.n_antennas / cfg.noise_power_bob
            assert sinr_bob == pytest.approx(expected, rel=1e-12)

    def test_no_an_reduces_to_plain_beamforming(self):
        cfg = make_config(an_fraction=0.0)
        h_bob = sample_rician(RicianSpec(2.0, 0.0, 4), RngSeed(9, 1))
        h_eve = sample_rician(RicianSpec(1.0, cfg.theta_eve, 4), RngSeed(9, 2))
        w = lob_beamformer(cfg.theta_bob, 4)
        sinr_bob, sinr_eve = sinr_pair(h_bob, h_eve, cfg)
        assert sinr_bob == pytest.approx(
            cfg.total_power * abs(np.vdot(h_bob, w)) ** 2 / cfg.noise_power_bob, rel=1e-12
        )
        assert sinr_eve == pytest.approx(
            cfg.total_power * abs(np.vdot(h_eve, w)) ** 2 / cfg.noise_power_eve, rel=1e-12
        )

    def test_all_power_to_noise_silences_bob(self):
        cfg = make_config(an_fraction=1.0)
        h_bob = steering_vector(0.0, 4)
        h_eve = steering_vector(cfg.theta_eve, 4)
        sinr_bob, sinr_eve = sinr_pair(h_bob, h_eve, cfg)
        assert sinr_bob == 0.0 and sinr_eve == 0.0

    def test_misaligned_beam_leaks_noise_onto_bob(self):
        cfg = make_config(k_factor_bob=math.inf, an_fraction=0.5)
        h_bob = steering_vector(0.0, 4)
        h_eve = steering_vector(cfg.theta_eve, 4)
        aligned, _ = sinr_pair(h_bob, h_eve, cfg, theta_hat=0.0)
        skewed, _ = sinr_pair(h_bob, h_eve, cfg, theta_hat=0.1)
        leakage = np.linalg.norm(h_bob.conj() @ an_basis(0.1, 4)) ** 2
        assert leakage > 1e-3
        assert skewed < aligned

    def test_scatter_leaks_noise_onto_bob(self):
        # A finite K channel has a component outside the LOS direction, so
        # some artificial noise reaches Bob in (almost) every realization.
        basis = an_basis(0.0, 4)
        batch = sample_rician(RicianSpec(10.0, 0.0, 4), RngSeed(11, 0), size=200)
        leakages = np.linalg.norm(batch.conj() @ basis, axis=1) ** 2
        assert np.min(leakages) > 1e-12


class TestRunLob:
    def test_pure_los_perfect_location_constant_gain(self):
        cfg = make_config(k_factor_bob=math.inf, an_fraction=0.0, trials=50)
        result = run_lob(cfg)
        expected = cfg.total_power * cfg.n_antennas / cfg.noise_power_bob
        for rec in result.records:
            assert rec.sinr_bob == pytest.approx(expected, rel=1e-12)

    def test_colocated_pure_los_eve_scales_by_noise(self):
        cfg = make_config(
            theta_eve=0.0,
            k_factor_bob=math.inf,
            k_factor_eve=math.inf,
            noise_power_bob=0.02,
            noise_power_eve=0.08,
            trials=20,
        )
        result = run_lob(cfg)
        for rec in result.records:
            assert rec.sinr_eve == pytest.approx(rec.sinr_bob * 0.02 / 0.08, rel=1e-12)

    def test_colocated_equal_noise_never_feasible(self):
        cfg = make_config(
            theta_eve=0.0,
            k_factor_bob=math.inf,
            k_factor_eve=math.inf,
            noise_power_eve=0.05,
            noise_power_bob=0.05,
            trials=20,
        )
        result = run_lob(cfg)
        assert result.summary.feasibility_prob == 0.0

    def test_full_an_infeasible_everywhere(self):
        cfg = make_config(an_fraction=1.0, trials=30)
        result = run_lob(cfg)
        assert result.summary.feasibility_prob == 0.0
        for rec in result.records:
            assert rec.sinr_bob == 0.0
            assert rec.assessment.r_sup == 0.0 and rec.assessment.r_sup_clamped
            assert not rec.assessment.feasible

    def test_mean_eve_sinr_strictly_decreasing_in_phi(self):
        cfg = make_config(trials=1500)
        means = [
            run_lob(replace(cfg, an_fraction=phi)).summary.mean_sinr_eve
            for phi in (0.0, 0.2, 0.4, 0.6, 0.8)
        ]
        assert all(b < a for a, b in zip(means, means[1:]))

    def test_feasibility_nonincreasing_in_location_error(self):
        cfg = make_config(trials=1500)
        feas = [
            run_lob(replace(cfg, location_error_std=math.radians(s))).summary.feasibility_prob
            for s in (0.0, 2.0, 5.0, 12.0)
        ]
        assert all(b <= a for a, b in zip(feas, feas[1:]))
        assert feas[-1] < feas[0]

    def test_deterministic_and_stable_under_extension(self):
        cfg = make_config(trials=30, location_error_std=math.radians(3.0))
        a = run_lob(cfg)
        b = run_lob(cfg)
        assert a.records == b.records
        longer = run_lob(replace(cfg, trials=60))
        assert longer.records[:30] == a.records

    def test_power_accounting(self):
        # Info + AN shares sum to the total power exactly for any phi.
        for phi in (0.0, 0.25, 0.5, 1.0):
            cfg = make_config(an_fraction=phi)
            info = (1.0 - cfg.an_fraction) * cfg.total_power
            an = cfg.an_fraction * cfg.total_power
            assert info + an == cfg.total_power

    def test_bearing_clamped_inside_steering_domain(self):
        cfg = make_config(
            theta_bob=1.4, location_error_std=5.0, trials=200, an_fraction=0.2
        )
        result = run_lob(cfg)  # extreme error draws must not blow up
        assert all(abs(rec.theta_hat) < math.pi / 2 for rec in result.records)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            make_config(n_antennas=1)
        with pytest.raises(ValueError):
            make_config(an_fraction=1.5)
        with pytest.raises(ValueError):
            make_config(theta_bob=math.pi)
        with pytest.raises(ValueError):
            make_config(total_power=0.0)


class TestOptimizeAnFraction:
    def test_single_point_grid(self):
        opt = optimize_an_fraction(make_config(trials=40), [0.25])
        assert opt.phi_star == 0.25

    def test_deterministic(self):
        cfg = make_config(trials=200)
        grid = [0.0, 0.3, 0.6]
        assert (
            optimize_an_fraction(cfg, grid).objective_curve
            == optimize_an_fraction(cfg, grid).objective_curve
        )

    def test_colocated_pure_los_prefers_no_an(self):
        # Eve in the beam with pure LOS: the null space misses both
        # receivers, so AN only burns power and the objective can only
        # step down; ties resolve to phi = 0.
        cfg = make_config(
            theta_eve=0.0,
            k_factor_bob=math.inf,
            k_factor_eve=math.inf,
            noise_power_bob=0.25,
            noise_power_eve=0.5,
            blocklength=100,
            trials=50,
        )
        opt = optimize_an_fraction(cfg, [0.0, 0.3, 0.6, 0.8, 0.9])
        values = [obj for _, obj in opt.objective_curve]
        assert all(b <= a for a, b in zip(values, values[1:]))
        assert values[0] == 1.0 and values[-1] == 0.0
        assert opt.phi_star == 0.0

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            optimize_an_fraction(make_config(trials=10), [])
        with pytest.raises(ValueError):
            optimize_an_fraction(make_config(trials=10), [0.5, 1.0])
