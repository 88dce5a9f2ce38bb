import math

import numpy as np
import pytest

from bohmatom import (
    DegenerateFit,
    DomainError,
    GuardZone,
    ModelParams,
    NotASpinEigenstate,
    OracleConfig,
    SphericalPoint,
    UnsupportedState,
    check_divergence,
    check_normalization,
    enumerate_states,
    limit_convergence,
    oracle_pauli_current,
    oracle_spin_reduction,
    validate_qn,
)
from bohmatom import dynamics, verify


class TestOracleConfig:
    def test_validation(self):
        with pytest.raises(DomainError):
            OracleConfig(fd_step=0.0)
        with pytest.raises(DomainError):
            OracleConfig(alpha_ladder=(1e-3, 1e-3))
        with pytest.raises(DomainError):
            OracleConfig(alpha_ladder=(1e-3, 2e-3))

    def test_rng_reproducible(self, cfg):
        a = cfg.rng().random(5)
        b = cfg.rng().random(5)
        assert np.all(a == b)

    def test_sample_points_respect_windows(self, cfg):
        rng = cfg.rng()
        qn = validate_qn(2, 0, 0.5, 0.5)
        for p in verify.sample_points(qn, 200, rng):
            assert abs(p.r - 2.0) >= 0.3 and abs(p.r - 4.0) >= 0.3
        qn = validate_qn(2, 1, 1.5, 0.5)
        cone = math.atan(math.sqrt(8.0))
        for p in verify.sample_points(qn, 200, rng):
            assert abs(p.theta - cone) >= 0.15
            assert abs(p.theta - (math.pi - cone)) >= 0.15


class TestPauliCurrentOracle:
    def test_matches_analytic_at_seeded_points(self, cfg):
        rng = cfg.rng()
        for qn in enumerate_states(2):
            for p in verify.sample_points(qn, 10, rng):
                fd = np.array(oracle_pauli_current(qn, p, cfg).components)
                an = np.array(verify.pauli_current_cartesian(qn, p).components)
                scale = max(float(np.linalg.norm(an)), 1e-300)
                assert float(np.linalg.norm(fd - an)) <= 1e-6 * scale

    def test_guard_zone(self, cfg):
        qn = validate_qn(2, 0, 0.5, 0.5)
        with pytest.raises(GuardZone):
            oracle_pauli_current(qn, SphericalPoint(2.05, 1.0, 0.0), cfg)
        with pytest.raises(GuardZone):
            oracle_pauli_current(
                validate_qn(1, 0, 0.5, 0.5), SphericalPoint(1.0, 2e-5, 0.0), cfg
            )

    def test_spin_part_carries_everything_for_s_states(self, cfg):
        # Real spatial part: the convective current is zero; the whole
        # current is the spin curl.
        qn = validate_qn(1, 0, 0.5, 0.5)
        p = SphericalPoint(1.2, 1.0, 0.8)
        conv, spin_term = verify.oracle_guidance_terms(qn, p, cfg)
        assert float(np.linalg.norm(conv)) <= 1e-12
        assert float(np.linalg.norm(spin_term)) > 0.1


class TestSpinReduction:
    def test_reduced_law_matches_full_velocity(self, cfg):
        rng = cfg.rng()
        for label in ((1, 0, 0.5, 0.5), (2, 0, 0.5, 0.5), (2, 1, 1.5, 1.5)):
            qn = validate_qn(*label)
            for p in verify.sample_points(qn, 10, rng):
                reduced = np.array(oracle_spin_reduction(qn, p, cfg).components)
                full = np.array(dynamics.pauli_velocity(qn, p).to_cartesian(p).components)
                scale = max(float(np.linalg.norm(full)), 1e-300)
                assert float(np.linalg.norm(reduced - full)) <= 1e-6 * scale

    def test_two_component_states_rejected(self, cfg):
        with pytest.raises(NotASpinEigenstate):
            oracle_spin_reduction(
                validate_qn(2, 1, 0.5, 0.5), SphericalPoint(1.0, 1.0, 0.0), cfg
            )

    def test_ground_state_spin_term_azimuthal(self, cfg):
        # rho is spherically symmetric and s is along z, so grad log rho x s
        # must be purely azimuthal.
        qn = validate_qn(1, 0, 0.5, 0.5)
        p = SphericalPoint(1.5, 0.9, 0.3)
        _conv, spin_term = verify.oracle_guidance_terms(qn, p, cfg)
        from bohmatom.dynamics import Frame, FrameVector

        local = FrameVector(tuple(spin_term), Frame.CARTESIAN).to_local(p).components
        assert abs(local[0]) <= 1e-6 * abs(local[2])
        assert abs(local[1]) <= 1e-6 * abs(local[2])


class TestDivergence:
    def test_small_divergence_both_current_kinds(self, cfg, model):
        rng = cfg.rng()
        for qn in enumerate_states(2):
            for p in verify.sample_points(qn, 5, rng):
                div = check_divergence(qn, p, cfg, kind="pauli")
                scale = np.linalg.norm(verify.pauli_current_cartesian(qn, p).components)
                assert abs(div) <= 1e-6 * max(float(scale), 1e-300)
                div = check_divergence(qn, p, cfg, kind="dirac", model=model)
                scale = np.linalg.norm(dynamics.dirac_current(qn, p, model).components)
                assert abs(div) <= 1e-6 * max(float(scale), 1e-300)

    def test_second_order_stencil(self, cfg):
        qn = validate_qn(2, 1, 1.5, 1.5)
        p = SphericalPoint(1.7, 1.1, 0.4)
        coarse = abs(check_divergence(qn, p, OracleConfig(fd_step=1e-2)))
        fine = abs(check_divergence(qn, p, OracleConfig(fd_step=1e-3)))
        assert 30.0 <= coarse / fine <= 300.0


class TestNormalization:
    def test_all_pauli_labels(self, cfg):
        for qn in enumerate_states(2):
            assert check_normalization(qn, cfg) == pytest.approx(1.0, abs=1e-8)

    def test_dirac_ground_state(self, cfg, model):
        qn = validate_qn(1, 0, 0.5, 0.5)
        val = check_normalization(qn, cfg, kind="dirac", model=model)
        assert val == pytest.approx(1.0, abs=1e-6)

    def test_dirac_small_alpha_matches_pauli(self, cfg):
        qn = validate_qn(1, 0, 0.5, 0.5)
        tiny = ModelParams(alpha=1e-5)
        dirac = check_normalization(qn, cfg, kind="dirac", model=tiny)
        pauli = check_normalization(qn, cfg, kind="pauli")
        assert dirac == pytest.approx(pauli, abs=1e-8)

    def test_dirac_n2_unsupported(self, cfg, model):
        with pytest.raises(UnsupportedState):
            check_normalization(validate_qn(2, 0, 0.5, 0.5), cfg, kind="dirac", model=model)


class TestLimitConvergence:
    def test_2s_slope(self, cfg):
        qn = validate_qn(2, 0, 0.5, 0.5)
        slope, _ = limit_convergence(qn, SphericalPoint(1.0, 1.0, 0.0), cfg)
        assert slope == pytest.approx(2.0, abs=0.1)

    def test_2p_half_slope(self, cfg):
        qn = validate_qn(2, 1, 0.5, 0.5)
        slope, _ = limit_convergence(qn, SphericalPoint(1.3, 0.8, 0.0), cfg)
        assert slope == pytest.approx(2.0, abs=0.1)

    def test_single_term_levels_degenerate(self, cfg):
        # No alpha dependence at all: the fit must refuse, not fabricate.
        for label in ((1, 0, 0.5, 0.5), (2, 1, 1.5, 1.5), (2, 1, 1.5, 0.5)):
            with pytest.raises(DegenerateFit):
                limit_convergence(validate_qn(*label), SphericalPoint(1.0, 0.9, 0.0), cfg)

    def test_slope_stable_under_ladder_shift(self):
        # Dropping the largest alpha moves the intercept, not the slope.
        qn = validate_qn(2, 0, 0.5, 0.5)
        p = SphericalPoint(1.0, 1.0, 0.0)
        a0 = ModelParams().alpha
        full = OracleConfig(alpha_ladder=tuple(a0 / 2**k for k in range(4)))
        shifted = OracleConfig(alpha_ladder=tuple(a0 / 2**k for k in range(1, 5)))
        s1, _ = limit_convergence(qn, p, full)
        s2, _ = limit_convergence(qn, p, shifted)
        assert abs(s1 - s2) <= 0.05
