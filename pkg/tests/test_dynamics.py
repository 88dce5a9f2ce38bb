import math

import numpy as np
import pytest

from bohmatom import (
    Frame,
    FrameVector,
    ModelParams,
    NodeSingularity,
    RateSource,
    SphericalPoint,
    UnsupportedState,
    angular_factor,
    dirac_current,
    dirac_density,
    dirac_rate,
    dirac_rate_nonrel_limit,
    enumerate_states,
    pauli_eval,
    pauli_rate_assembled,
    pauli_rate_closed_form,
    pauli_velocity,
    pauli_velocity_a,
    pauli_velocity_b,
    spin_vector,
    validate_qn,
)
from bohmatom.verify import oracle_dirac_current, sample_points

from oracles import spin_expectation


def _rng():
    return np.random.default_rng(123)


class TestFrameVector:
    def test_round_trip(self):
        rng = _rng()
        for _ in range(100):
            p = SphericalPoint(rng.uniform(0.2, 5), rng.uniform(0.1, 3.0), rng.uniform(0, 6.2))
            v = FrameVector(tuple(rng.standard_normal(3)), Frame.CARTESIAN)
            back = v.to_local(p).to_cartesian(p)
            for a, b in zip(v.components, back.components):
                assert a == pytest.approx(b, rel=1e-14, abs=1e-14)

    def test_unit_vectors(self):
        p = SphericalPoint(1.0, math.pi / 2, 0.0)
        # At the equator on the x axis: e_r = x_hat, e_theta = -z_hat, e_phi = y_hat.
        v = FrameVector((1.0, 0.0, 0.0), Frame.LOCAL_SPHERICAL).to_cartesian(p)
        assert v.components == pytest.approx((1.0, 0.0, 0.0), abs=1e-15)
        v = FrameVector((0.0, 0.0, 1.0), Frame.LOCAL_SPHERICAL).to_cartesian(p)
        assert v.components == pytest.approx((0.0, 1.0, 0.0), abs=1e-15)


class TestSpinVector:
    def test_ground_state_pattern(self, model):
        qn = validate_qn(1, 0, 0.5, 0.5)
        for theta in (0.4, 1.2, 2.6):
            p = SphericalPoint(1.0, theta, 0.9)
            sv = spin_vector(pauli_eval(qn, p), p, qn)
            wx, wy, wz = sv.w.components
            assert wx == 0.0 and wy == 0.0 and wz > 0.0
            assert sv.s_r == pytest.approx(sv.r_s * math.cos(theta), rel=1e-14)
            assert sv.s_theta == pytest.approx(-sv.r_s * math.sin(theta), rel=1e-14)

    def test_matches_matrix_arithmetic(self):
        qn = validate_qn(2, 1, 1.5, 0.5)
        for p in (
            SphericalPoint(1.0, math.pi / 2, 0.3),
            SphericalPoint(2.4, 0.8, 4.1),
        ):
            s2 = pauli_eval(qn, p)
            sv = spin_vector(s2, p, qn)
            ref = spin_expectation(s2.c1, s2.c2)
            for a, b in zip(sv.w.components, ref):
                assert a == pytest.approx(b, rel=1e-13, abs=1e-18)

    def test_sign_flip_under_m_negation(self):
        rng = _rng()
        for qn in enumerate_states(2):
            if qn.m < 0:
                continue
            partner = qn.with_m(-qn.m)
            p = SphericalPoint(rng.uniform(0.5, 4), rng.uniform(0.3, 2.8), rng.uniform(0, 6.2))
            w_plus = spin_vector(pauli_eval(qn, p), p, qn).w.components
            w_minus = spin_vector(pauli_eval(partner, p), p, partner).w.components
            scale = max(abs(c) for c in w_plus)
            for a, b in zip(w_plus, w_minus):
                assert a + b == pytest.approx(0.0, abs=1e-15 * scale)

    def test_magnitude_identity_random_spinors(self):
        from bohmatom.states import Spinor2

        rng = _rng()
        for row in rng.standard_normal((1000, 4)):
            s2 = Spinor2(complex(row[0], row[1]), complex(row[2], row[3]))
            w = spin_expectation(s2.c1, s2.c2)
            assert float(np.linalg.norm(w)) == pytest.approx(s2.norm_sq, rel=1e-13)

    def test_azimuthal_component_vanishes(self):
        rng = _rng()
        for qn in enumerate_states(2):
            p = SphericalPoint(rng.uniform(0.5, 4), rng.uniform(0.3, 2.8), rng.uniform(0, 6.2))
            sv = spin_vector(pauli_eval(qn, p), p, qn)
            w_phi = sv.w.to_local(p).components[2]
            assert abs(w_phi) <= 1e-13 * max(sv.r_s, 1e-300)


class TestPauliVelocities:
    def test_va_vanishes_for_ground_state(self):
        qn = validate_qn(1, 0, 0.5, 0.5)
        v = pauli_velocity_a(qn, SphericalPoint(1.7, 1.1, 0.3))
        assert v.components[2] == 0.0

    def test_va_stretched_state(self):
        # v_2 = 0, so the bracket is m - 1/2 = 1 and |v_a| = 1/(r sin theta).
        qn = validate_qn(2, 1, 1.5, 1.5)
        v = pauli_velocity_a(qn, SphericalPoint(2.0, math.pi / 2, 0.0))
        assert v.components[2] == pytest.approx(0.5, rel=1e-14)

    def test_vb_ground_state_value(self):
        qn = validate_qn(1, 0, 0.5, 0.5)
        v = pauli_velocity_b(qn, SphericalPoint(1.0, math.pi / 2, 0.0))
        assert v.components[2] == pytest.approx(1.0, rel=1e-14)

    def test_vb_analytic_matches_fd(self, model):
        rng = _rng()
        for qn in enumerate_states(2):
            for p in sample_points(qn, 5, rng):
                analytic = pauli_velocity_b(qn, p).components[2]
                fd = pauli_velocity_b(qn, p, derivatives="fd").components[2]
                assert analytic == pytest.approx(fd, rel=1e-6, abs=1e-9)

    def test_velocity_antisymmetry(self):
        rng = _rng()
        for qn in enumerate_states(2):
            if qn.m < 0:
                continue
            partner = qn.with_m(-qn.m)
            for p in sample_points(qn, 5, rng):
                for fn in (pauli_velocity_a, pauli_velocity_b, pauli_velocity):
                    plus = fn(qn, p).components[2]
                    minus = fn(partner, p).components[2]
                    assert plus + minus == pytest.approx(0.0, abs=1e-12 * max(abs(plus), 1e-300))

    def test_total_speed_ground_state(self):
        qn = validate_qn(1, 0, 0.5, 0.5)
        v = pauli_velocity(qn, SphericalPoint(1.0, math.pi / 2, 0.0))
        assert v.components[2] == pytest.approx(1.0, rel=1e-14)

    def test_velocity_is_azimuthal(self):
        qn = validate_qn(2, 1, 1.5, 0.5)
        v = pauli_velocity(qn, SphericalPoint(1.5, 1.0, 0.0))
        assert v.frame is Frame.LOCAL_SPHERICAL
        assert v.components[0] == 0.0 and v.components[1] == 0.0


class TestClosedFormRates:
    def test_tabulated_values(self):
        eq = math.pi / 2
        checks = [
            ((1, 0, 0.5, 0.5), SphericalPoint(1.0, eq, 0.0), 1.0),
            ((2, 1, 0.5, 0.5), SphericalPoint(2.0, eq, 0.0), 0.5),
            ((2, 1, 1.5, 0.5), SphericalPoint(1.0, eq, 0.0), -0.5),
            ((2, 1, 1.5, 1.5), SphericalPoint(2.0, 1.0, 0.0), 0.25),
            ((2, 0, 0.5, 0.5), SphericalPoint(1.0, 1.3, 0.0), 1.5),
        ]
        for label, p, expect in checks:
            rep = pauli_rate_closed_form(validate_qn(*label), p)
            assert rep.rate == pytest.approx(expect, rel=1e-14)
            assert rep.source is RateSource.PAULI_CLOSED_FORM

    def test_2s_pole(self):
        qn = validate_qn(2, 0, 0.5, 0.5)
        with pytest.raises(NodeSingularity):
            pauli_rate_closed_form(qn, SphericalPoint(2.0, 1.0, 0.0))

    def test_unsupported_state(self):
        with pytest.raises(UnsupportedState):
            pauli_rate_closed_form(validate_qn(3, 0, 0.5, 0.5), SphericalPoint(1.0, 1.0, 0.0))

    def test_assembled_matches_closed_form(self):
        rng = _rng()
        for qn in enumerate_states(2):
            for p in sample_points(qn, 20, rng):
                assembled = pauli_rate_assembled(qn, p).rate
                closed = pauli_rate_closed_form(qn, p).rate
                assert assembled == pytest.approx(closed, rel=1e-10)


class TestAngularFactor:
    def test_ground_state(self):
        qn = validate_qn(1, 0, 0.5, 0.5)
        for theta in (0.3, 1.0, 2.5):
            assert angular_factor(qn, theta) == pytest.approx(
                math.sin(theta) / (4 * math.pi), rel=1e-14
            )

    def test_2p32_m_half(self):
        qn = validate_qn(2, 1, 1.5, 0.5)
        for theta in (0.3, 1.0, 2.5):
            ct, st = math.cos(theta), math.sin(theta)
            expect = st * (8 * ct * ct - st * st) / (8 * math.pi)
            assert angular_factor(qn, theta) == pytest.approx(expect, rel=1e-13, abs=1e-16)

    def test_sign_flip_under_m_negation(self):
        for label in ((1, 0, 0.5, 0.5), (2, 1, 1.5, 0.5), (2, 1, 0.5, 0.5), (2, 1, 1.5, 1.5)):
            qn = validate_qn(*label)
            partner = qn.with_m(-qn.m)
            for theta in (0.4, 1.3, 2.2):
                plus = angular_factor(qn, theta)
                minus = angular_factor(partner, theta)
                assert plus + minus == pytest.approx(0.0, abs=1e-15 * max(abs(plus), 1e-300))


class TestDiracCurrent:
    def test_jz_zero_and_xy_ratio(self, model):
        qn = validate_qn(1, 0, 0.5, 0.5)
        p = SphericalPoint(1.0, 1.1, 0.7)
        j = dirac_current(qn, p, model)
        assert j.components[2] == 0.0
        assert j.components[0] / j.components[1] == pytest.approx(-math.tan(p.phi), rel=1e-13)

    def test_matches_matrix_contraction(self, model):
        rng = _rng()
        for qn in enumerate_states(2):
            for p in sample_points(qn, 10, rng):
                closed = np.array(dirac_current(qn, p, model).components)
                brute = np.array(oracle_dirac_current(qn, p, model).components)
                scale = max(float(np.linalg.norm(brute)), 1e-300)
                assert float(np.linalg.norm(closed - brute)) <= 1e-12 * scale

    def test_ground_state_absolute_scale(self, model):
        # For n = 1 the current includes g^2; its azimuthal magnitude is
        # rho * v = rho * r sin(theta) * rate.
        qn = validate_qn(1, 0, 0.5, 0.5)
        p = SphericalPoint(1.3, 0.9, 0.4)
        j_phi = dirac_current(qn, p, model).to_local(p).components[2]
        rho = dirac_density(qn, p, model)
        rate = dirac_rate(qn, p, model).rate
        assert j_phi == pytest.approx(rho * p.r * math.sin(p.theta) * rate, rel=1e-13)


class TestDiracRates:
    def test_ground_state_rate_is_exactly_coulombic(self, model):
        # 2 delta c / (1 + delta^2) = c sqrt(1 - eps1^2) = c alpha = 1:
        # the exact rate is hbar/(m a r) at any alpha, not just in the limit.
        qn = validate_qn(1, 0, 0.5, 0.5)
        for r in (0.5, 1.0, 3.0):
            p = SphericalPoint(r, 1.2, 0.1)
            assert dirac_rate(qn, p, model).rate == pytest.approx(1.0 / r, rel=1e-14)

    def test_rate_antisymmetry(self, model):
        rng = _rng()
        for qn in enumerate_states(2):
            if qn.m < 0:
                continue
            partner = qn.with_m(-qn.m)
            for p in sample_points(qn, 5, rng):
                plus = dirac_rate(qn, p, model).rate
                minus = dirac_rate(partner, p, model).rate
                assert plus + minus == pytest.approx(0.0, abs=1e-12 * max(abs(plus), 1e-300))

    def test_limit_forms_match_closed_form_catalog(self):
        rng = _rng()
        for qn in enumerate_states(2):
            for p in sample_points(qn, 5, rng):
                limit = dirac_rate_nonrel_limit(qn, p)
                closed = pauli_rate_closed_form(qn, p)
                assert limit.rate == closed.rate
                assert limit.source is RateSource.DIRAC_NONREL_LIMIT

    def test_2s_limit_form_algebraic_identity(self):
        # (1/2r)(1 - 1/(r/2 - 1)) == (1/2r)(1/(1 - r/2) + 1) on a grid.
        qn = validate_qn(2, 0, 0.5, 0.5)
        for r in np.linspace(0.3, 7.5, 30):
            if abs(r - 2.0) < 0.2:
                continue
            p = SphericalPoint(float(r), 1.0, 0.0)
            lhs = (1.0 / (2 * r)) * (1.0 - 1.0 / (r / 2.0 - 1.0))
            assert dirac_rate_nonrel_limit(qn, p).rate == pytest.approx(lhs, rel=1e-13)

    def test_2p_half_sign_consistency(self, model):
        # The nonrelativistic limit of the exact current for m = +1/2 is
        # +(1/r^2)(3 - r/2); the -1/2 member carries the minus sign.
        qn = validate_qn(2, 1, 0.5, 0.5)
        p = SphericalPoint(1.0, 1.0, 0.0)
        tiny = ModelParams(alpha=1e-5)
        exact = dirac_rate(qn, p, tiny).rate
        limit = dirac_rate_nonrel_limit(qn, p).rate
        assert limit == pytest.approx(2.5, rel=1e-14)
        assert exact == pytest.approx(limit, rel=1e-8)
        minus = dirac_rate_nonrel_limit(qn.with_m(-0.5), p).rate
        assert minus == pytest.approx(-2.5, rel=1e-14)

    def test_single_term_levels_have_no_alpha_dependence(self, model):
        # 1S1/2 and both 2P3/2 labels: exact == limit identically in alpha.
        rng = _rng()
        for label in ((1, 0, 0.5, 0.5), (2, 1, 1.5, 1.5), (2, 1, 1.5, 0.5)):
            qn = validate_qn(*label)
            for p in sample_points(qn, 5, rng):
                limit = dirac_rate_nonrel_limit(qn, p).rate
                for alpha in (model.alpha, model.alpha / 2, 0.05):
                    exact = dirac_rate(qn, p, ModelParams(alpha=alpha)).rate
                    assert exact == pytest.approx(limit, rel=1e-13)

    def test_two_term_levels_quadratic_gap(self, model):
        # 2S1/2 and 2P1/2 carry a genuine O(alpha^2) correction: the gap
        # contracts ~4x when alpha halves.
        for label in ((2, 0, 0.5, 0.5), (2, 1, 0.5, 0.5)):
            qn = validate_qn(*label)
            p = SphericalPoint(1.0, 1.0, 0.0)
            limit = dirac_rate_nonrel_limit(qn, p).rate
            gap_full = abs(dirac_rate(qn, p, model).rate - limit)
            gap_half = abs(dirac_rate(qn, p, ModelParams(alpha=model.alpha / 2)).rate - limit)
            assert gap_full > 0.0
            assert gap_full / gap_half == pytest.approx(4.0, rel=5e-4)
