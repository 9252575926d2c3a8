import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from vortexarc import (ArcGeometry, DivergenceError, DomainError, EllipticArgs, FieldPoint,
                       SingularIntegrandError, arc_integral, arc_integral_quadrature, carlson_rd,
                       carlson_rf, coefficients, dF_dk, ellint_E, ellint_Ek, ellint_F, ellint_K)

# high-precision quadrature of the defining integrands (mpmath, 30 digits)
F_PI4_K09 = 0.85794019788551098165
E_11_K08 = 0.97700193879689211025
# int_{-pi/2}^{pi/2} dt / |x - xi(t)| for x = (0, 0.3, 0), R = 1
ARC_I_NORMAL_03 = 5.3185875323072484352

phis = st.floats(-math.pi, math.pi, allow_nan=False)
moduli = st.floats(0.0, 0.999999, allow_nan=False)


def quad_F(phi, k):
    return integrate.quad(lambda t: 1.0 / math.sqrt(1.0 - (k * math.sin(t)) ** 2), 0.0, phi,
                          epsabs=0.0, epsrel=1e-13, limit=500)[0]


def quad_E(phi, k):
    return integrate.quad(lambda t: math.sqrt(1.0 - (k * math.sin(t)) ** 2), 0.0, phi,
                          epsabs=0.0, epsrel=1e-13, limit=500)[0]


class TestExamples:
    def test_zero_amplitude(self):
        assert ellint_F(0.0, 0.7) == 0.0
        assert ellint_E(0.0, 0.5) == 0.0

    def test_zero_modulus(self):
        assert ellint_F(0.8, 0.0) == pytest.approx(0.8, rel=1e-15)
        assert ellint_E(1.1, 0.0) == pytest.approx(1.1, rel=1e-15)

    def test_unit_modulus_closed_form(self):
        assert ellint_F(math.pi / 4, 1.0) == pytest.approx(math.log(math.tan(3 * math.pi / 8)), rel=1e-14)

    def test_E_quarter_period_unit_modulus(self):
        assert ellint_E(math.pi / 2, 1.0) == pytest.approx(1.0, rel=1e-15)

    def test_F_golden(self):
        assert ellint_F(math.pi / 4, 0.9) == pytest.approx(F_PI4_K09, rel=1e-14)

    def test_E_golden(self):
        assert ellint_E(1.1, 0.8) == pytest.approx(E_11_K08, rel=1e-14)

    def test_accepts_args_object(self):
        a = EllipticArgs.from_lambda(math.sin(math.pi / 4), 0.9)
        assert ellint_F(a) == pytest.approx(F_PI4_K09, rel=1e-14)
        assert a.lam == pytest.approx(math.sin(math.pi / 4), abs=1e-16)


class TestErrors:
    @pytest.mark.parametrize("k", [-0.1, 1.1])
    def test_modulus_domain(self, k):
        with pytest.raises(DomainError):
            ellint_F(0.3, k)
        with pytest.raises(DomainError):
            ellint_E(0.3, k)

    @pytest.mark.parametrize("phi", [math.pi / 2, -math.pi / 2, 2.0, -math.pi])
    def test_divergent_corner(self, phi):
        with pytest.raises(DivergenceError):
            ellint_F(phi, 1.0)

    def test_amplitude_domain(self):
        with pytest.raises(DomainError):
            ellint_F(3.5, 0.5)

    def test_divergent_flag(self):
        assert EllipticArgs(math.pi / 2, 1.0).divergent
        assert not EllipticArgs(1.0, 1.0).divergent

    def test_E_finite_at_unit_modulus_beyond_quadrant(self):
        # int_0^phi |cos| = 2 - sin(phi) for phi in (pi/2, pi]
        assert ellint_E(2.5, 1.0) == pytest.approx(2.0 - math.sin(2.5), rel=1e-14)


class TestCarlson:
    def test_rf_equal_arguments(self):
        assert carlson_rf(4.0, 4.0, 4.0) == pytest.approx(0.5, rel=1e-15)

    def test_rd_equal_arguments(self):
        assert carlson_rd(4.0, 4.0, 4.0) == pytest.approx(0.125, rel=1e-15)

    def test_rf_lemniscate(self):
        # R_F(0, 1, 2) = Gamma(1/4)^2 / (4 sqrt(2 pi))
        assert carlson_rf(0.0, 1.0, 2.0) == pytest.approx(
            math.gamma(0.25) ** 2 / (4.0 * math.sqrt(2.0 * math.pi)), rel=1e-15)

    def test_rd_against_mpmath(self):
        assert carlson_rd(0.3, 1.7, 2.2) == pytest.approx(float(mp.elliprd(0.3, 1.7, 2.2)), rel=1e-14)

    def test_complete_integrals(self):
        assert ellint_K(0.6) == pytest.approx(float(mp.ellipk(0.36)), rel=1e-15)
        assert ellint_Ek(0.6) == pytest.approx(float(mp.ellipe(0.36)), rel=1e-15)


class TestProperties:
    @settings(max_examples=200, deadline=None)
    @given(phis, moduli)
    def test_odd(self, phi, k):
        assert ellint_F(-phi, k) == pytest.approx(-ellint_F(phi, k), abs=1e-13)
        assert ellint_E(-phi, k) == pytest.approx(-ellint_E(phi, k), abs=1e-13)

    @given(phis)
    def test_identity_at_zero_modulus(self, phi):
        assert ellint_F(phi, 0.0) == pytest.approx(phi, abs=1e-13)
        assert ellint_E(phi, 0.0) == pytest.approx(phi, abs=1e-13)

    @given(st.floats(-1.5707, 1.5707))
    def test_unit_modulus_atanh(self, phi):
        assert ellint_F(phi, 1.0) == pytest.approx(math.atanh(math.sin(phi)), rel=1e-11, abs=1e-300)

    @given(st.floats(1e-3, math.pi / 2), st.floats(0.0, 0.99), st.floats(0.0, 0.01))
    def test_monotone_in_modulus(self, phi, k, dk):
        assert ellint_F(phi, k + dk) >= ellint_F(phi, k)

    def test_reflection(self):
        k = 0.83
        for phi in (1.7, 2.4, 3.0):
            assert ellint_F(phi, k) == pytest.approx(2 * ellint_K(k) - ellint_F(math.pi - phi, k), rel=1e-14)

    def test_quadrature_agreement_grid(self):
        worst = 0.0
        for phi in np.linspace(-math.pi, math.pi, 12):
            for k in np.linspace(0.0, 0.999, 12):
                for f, q in ((ellint_F, quad_F), (ellint_E, quad_E)):
                    ref = q(phi, k)
                    if ref != 0.0:
                        worst = max(worst, abs(f(phi, k) - ref) / abs(ref))
        assert worst < 1e-11

    def test_near_unit_modulus_against_mpmath(self):
        # k^2 sin^2 phi within 1e-14 of 1
        k = 1.0 - 1e-15
        phi = math.pi / 2 - 1e-7
        with mp.workdps(40):
            ref = float(mp.ellipf(mp.mpf(phi), mp.mpf(k) ** 2))
        assert ellint_F(phi, k) == pytest.approx(ref, rel=1e-12)


class TestModulusDerivative:
    @pytest.mark.parametrize("phi,k", [(0.4, 0.3), (1.2, 0.9), (2.7, 0.99), (-2.0, 0.6)])
    def test_central_difference(self, phi, k):
        h = 1e-6
        fd = (ellint_F(phi, k + h) - ellint_F(phi, k - h)) / (2 * h)
        assert dF_dk(phi, k) == pytest.approx(fd, rel=1e-7)

    def test_zero_modulus(self):
        assert dF_dk(1.0, 0.0) == 0.0

    def test_rejects_unit_modulus(self):
        with pytest.raises(DomainError):
            dF_dk(0.5, 1.0)


class TestArcIntegral:
    def test_normal_axis_golden(self):
        p = coefficients(ArcGeometry(1.0, math.pi / 2), FieldPoint.from_cartesian((0.0, 0.3, 0.0)))
        assert arc_integral(p) == pytest.approx(ARC_I_NORMAL_03, rel=1e-13)

    def test_full_ring_near_centre(self):
        # at the exact centre r = 0 and every point of the ring is at distance R
        arc = ArcGeometry(1.0, math.pi)
        p = coefficients(arc, FieldPoint.from_cartesian((0.0, 1.0, 0.0)))
        assert arc_integral(p) == pytest.approx(2 * math.pi, rel=1e-14)
        p = coefficients(arc, FieldPoint.from_cartesian((0.01, 1.02, 0.3)))
        assert arc_integral(p) == pytest.approx(arc_integral_quadrature(p), rel=1e-10)

    def test_empty_arc(self):
        p = coefficients(ArcGeometry(1.0, 0.0), FieldPoint.from_cartesian((0.1, 0.2, 0.3)))
        assert arc_integral(p) == 0.0

    @settings(max_examples=60, deadline=None)
    @given(st.floats(0.05, 1.5), st.floats(-math.pi, math.pi), st.floats(0.05, math.pi - 0.05),
           st.floats(0.1, math.pi))
    def test_matches_quadrature(self, eps, g1, g2, L):
        arc = ArcGeometry(1.0, L)
        p = coefficients(arc, FieldPoint.from_spherical(eps, g1, g2))
        assert arc_integral(p) == pytest.approx(arc_integral_quadrature(p), rel=1e-10)

    def test_point_on_filament(self):
        p = coefficients(ArcGeometry(1.0, math.pi / 2), FieldPoint.from_cartesian((0.0, 0.0, 0.0)),
                         check_core=False)
        with pytest.raises(SingularIntegrandError):
            arc_integral(p)
