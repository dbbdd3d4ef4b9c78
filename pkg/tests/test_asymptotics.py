import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from sgkink.asymptotics import (
    SpectralParameter,
    asymptotic_eigenpairs,
    coefficient_matrix,
    exponent_sign_scan,
    large_lambda_matrix,
    limit_matrix,
    luminal_limit_exponents,
    superluminal_exponents,
)
from sgkink.errors import DegenerateSplitting
from sgkink.profile import KinkProfile, classify_wave

sub_c = st.floats(0.0, 0.99)
sup_c = st.floats(1.01, 4.0)
coord = st.floats(-6.0, 6.0)
lams = st.builds(complex, coord, coord)


@given(lams)
def test_spectral_parameter_polar(lam):
    sp = SpectralParameter(lam)
    assert sp.p == lam.real and sp.q == lam.imag
    assert abs(sp.r * cmath.exp(1j * sp.theta) - lam) <= 1e-14 * max(abs(lam), 1e-300)
    assert -math.pi < sp.theta <= math.pi


class TestCoefficientMatrix:
    def test_centre(self):
        a = coefficient_matrix(KinkProfile.from_speed(0.0), 0.0, 0.0)
        assert np.allclose(a, [[0, 1], [-1, 0]], atol=1e-15)

    def test_far_field(self):
        a = coefficient_matrix(KinkProfile.from_speed(0.0), 0.0, 40.0)
        assert np.allclose(a, [[0, 1], [1, 0]], atol=1e-15)
        assert np.allclose(a, limit_matrix(classify_wave(0.0), 0.0), atol=1e-15)

    def test_quarter_turn_entry(self):
        p = KinkProfile.from_speed(0.0)
        z = math.atanh(math.sin(math.pi / 4))  # v = pi/2
        assert abs(coefficient_matrix(p, 0.0, z)[1, 0]) <= 1e-15

    def test_limit_examples(self):
        assert np.allclose(limit_matrix(classify_wave(0.6), 1.0), [[0, 1], [3.125, 1.875]], atol=1e-14)
        p = KinkProfile.from_speed(0.5)
        for z in (-30.0, 30.0):
            assert np.linalg.norm(coefficient_matrix(p, 1 + 2j, z) - limit_matrix(p.params, 1 + 2j)) <= 1e-10

    def test_decay_rate(self):
        # the matrix gap is 2 sech**2(kz)/(1-c**2); in the matrix itself it is
        # swamped by rounding beyond z ~ 14, so the far window uses the defect
        p = KinkProfile.from_speed(0.5)
        z = np.linspace(2, 10, 17)
        gap = [np.linalg.norm(coefficient_matrix(p, 0.7, zz) - limit_matrix(p.params, 0.7)) for zz in z]
        assert np.polyfit(z, np.log(gap), 1)[0] == pytest.approx(-2 * p.k, rel=0.1)
        z = np.linspace(10, 25, 16)
        gap = p.defect(z) / p.params.mu
        assert np.polyfit(z, np.log(gap), 1)[0] == pytest.approx(-2 * p.k, rel=0.1)


class TestEigenpairs:
    def test_static_example(self):
        d = asymptotic_eigenpairs(classify_wave(0.0), 0.0)
        assert d.gamma_u == pytest.approx(1.0) and d.gamma_s == pytest.approx(-1.0)
        assert np.allclose(d.xi_u, np.array([1, 1]) / math.sqrt(2))
        assert abs(d.xi_s[0] * 1 - d.xi_s[1] * -1) <= 1e-15  # parallel to (-1, 1)

    def test_moving_example(self):
        d = asymptotic_eigenpairs(classify_wave(0.6), 1.0)
        assert d.gamma_u.real == pytest.approx((-0.6 - math.sqrt(1.64)) / -0.64, abs=1e-12)
        assert d.gamma_u.real == pytest.approx(2.93847, abs=1e-5)
        assert d.gamma_s.real == pytest.approx(-1.06347, abs=1e-5)

    @given(sub_c, lams)
    def test_quadratic_and_eigenvector_residuals(self, c, lam):
        params = classify_wave(c)
        try:
            d = asymptotic_eigenpairs(params, lam)
        except DegenerateSplitting:
            assume(False)
        a = limit_matrix(params, lam)
        for g, xi in ((d.gamma_u, d.xi_u), (d.gamma_s, d.xi_s)):
            assert abs((c * c - 1) * g * g + 2 * c * lam * g + lam * lam + 1) <= 1e-10 * (1 + abs(lam) ** 2)
            assert np.linalg.norm(a @ xi - g * xi) <= 1e-10 * np.linalg.norm(xi)
            assert np.linalg.norm(xi) == pytest.approx(1.0, abs=1e-14)
            lead = xi[0] if abs(xi[0]) > 1e-300 else xi[1]
            assert lead.real > 0 and abs(lead.imag) <= 1e-15

    @given(sub_c, st.floats(-20.0, 20.0))
    def test_real_lambda_signs(self, c, lam):
        d = asymptotic_eigenpairs(classify_wave(c), lam)
        assert d.gamma_u.real > 0 > d.gamma_s.real
        assert d.gamma_u.imag == 0 and d.gamma_s.imag == 0

    def test_lambda_squared_minus_one_fallback(self):
        params = classify_wave(0.5)
        lam = 1e-9 + 1j  # |lam**2 + 1| below 1e-8, off the branch cut
        d = asymptotic_eigenpairs(params, lam)
        a = limit_matrix(params, lam)
        for g, xi in ((d.gamma_u, d.xi_u), (d.gamma_s, d.xi_s)):
            assert np.linalg.norm(a @ xi - g * xi) <= 1e-12

    def test_branch_cut_is_degenerate(self):
        # lam**2 - (c**2 - 1) = -3 lies on the negative real axis
        params = classify_wave(0.0)
        with pytest.raises(DegenerateSplitting):
            asymptotic_eigenpairs(params, 2j)

    def test_coincident_roots(self):
        params = classify_wave(0.0)
        with pytest.raises(DegenerateSplitting):
            asymptotic_eigenpairs(params, 1j * (1 - 1e-20))

    def test_requires_subluminal(self):
        with pytest.raises(ValueError):
            asymptotic_eigenpairs(classify_wave(2.0), 1.0)


class TestLargeLambda:
    def test_example(self):
        mat, (g_plus, g_minus) = large_lambda_matrix(classify_wave(0.5), 10.0)
        assert g_plus == pytest.approx(-10 / 1.5)
        assert g_minus == pytest.approx(20.0)
        assert np.allclose(sorted(np.linalg.eigvals(mat).real), sorted([g_plus, g_minus]))

    @given(sub_c, st.floats(0.01, 50.0))
    def test_opposite_signs(self, c, lam):
        mat, (gp, gm) = large_lambda_matrix(classify_wave(c), lam)
        assert gp < 0 < gm
        assert np.allclose(sorted(np.linalg.eigvals(mat).real), sorted([gp, gm]), rtol=1e-9, atol=1e-12)

    def test_zero(self):
        _, (gp, gm) = large_lambda_matrix(classify_wave(0.5), 0.0)
        assert gp == 0 and gm == 0


class TestSuperluminal:
    def test_example(self):
        ex = superluminal_exponents(classify_wave(math.sqrt(2)), 2.0)
        assert ex.r1.real == pytest.approx(-(2 * math.sqrt(2) + math.sqrt(3)), abs=1e-12)
        assert ex.r2.real == pytest.approx(-(2 * math.sqrt(2) - math.sqrt(3)), abs=1e-12)

    def test_complex_example(self):
        ex = superluminal_exponents(classify_wave(2.0), 1 + 1j)
        assert ex.r1.real < 0 and ex.r2.real < 0

    def test_degenerate(self):
        with pytest.raises(DegenerateSplitting):
            superluminal_exponents(classify_wave(math.sqrt(2)), 1.0)

    def test_requires_superluminal(self):
        with pytest.raises(ValueError):
            superluminal_exponents(classify_wave(0.5), 1.0)

    @given(sup_c, lams)
    def test_quadratic_residual(self, c, lam):
        try:
            ex = superluminal_exponents(classify_wave(c), lam)
        except DegenerateSplitting:
            assume(False)
        for r in (ex.r1, ex.r2):
            assert abs((1 - c * c) * r * r - 2 * c * lam * r - (lam * lam + 1)) <= 1e-10 * (1 + abs(lam) ** 2)

    @given(sup_c, st.floats(1e-3, 6.0), st.floats(-6.0, 6.0))
    def test_sign_agreement(self, c, p, q):
        scan = exponent_sign_scan([c], [complex(p, q)])
        assert all(s.signs_agree and s.sign_r1 == -1 for s in scan.valid)

    def test_scan_example_grid(self):
        scan = exponent_sign_scan([1.1, 1.5, 2.0, 3.0], [1.0, 2 + 1j, 0.5 + 3j])
        assert scan.agreement_fraction == 1.0
        assert all(s.sign_r1 == s.sign_r2 == -1 for s in scan.valid)

    def test_scan_flags_degenerate(self):
        scan = exponent_sign_scan([math.sqrt(2)], [1.0, 2.0])
        assert scan.degenerate_points == [(math.sqrt(2), 1 + 0j)]
        assert len(scan.valid) == 1

    @given(sup_c, st.floats(0.05, 5.0), st.floats(0.05, 5.0))
    def test_conjugate_symmetry(self, c, p, q):
        a, b = exponent_sign_scan([c], [complex(p, q), complex(p, -q)]).samples
        assume(not a.degenerate and not b.degenerate)
        assert a.r1 == pytest.approx(b.r1.conjugate(), abs=1e-12)
        assert a.r2 == pytest.approx(b.r2.conjugate(), abs=1e-12)
        assert (a.sign_r1, a.sign_r2) == (b.sign_r1, b.sign_r2)

    @pytest.mark.parametrize("lam", [1.0, 2 + 1j, 0.5 + 3j])
    def test_luminal_limit(self, lam):
        sign_r1, r2_limit = luminal_limit_exponents(lam)
        c = 1 + 1e-5
        ex = superluminal_exponents(classify_wave(c), lam)
        assert math.copysign(1.0, ex.r1.real) == sign_r1
        assert ex.r2 == pytest.approx(r2_limit, abs=1e-3)

    def test_luminal_limit_real_one(self):
        # r2 -> -(1 + 1)/2 = -1 for lam = 1, while r1 -> -inf
        sign_r1, r2_limit = luminal_limit_exponents(1.0)
        assert sign_r1 == -1 and r2_limit == pytest.approx(-1.0)

    def test_derivative_sign_away_from_resonance(self):
        # the derivative check holds away from lam**2 = c**2 - 1
        scan = exponent_sign_scan([2.0, 3.0], [1.0, 2 + 1j, 0.5 + 3j, 3 + 3j])
        assert not scan.derivative_mismatches

    def test_derivative_sign_counterexample(self):
        # near lam**2 = c**2 - 1 the derivative of Re r2 has the sign of -Re lam
        lam = 0.6919266269812423 + 0.15606390319322883j
        (s,) = exponent_sign_scan([1.1], [lam]).samples
        c = 1.1
        root = cmath.sqrt(lam * lam + 1 - c * c)
        one = 1 - c * c
        exact = ((lam + c / root) * one + 2 * c * (c * lam - root)) / one**2
        assert s.dre_r2_dc == pytest.approx(exact.real, rel=1e-6)
        assert s.dre_r2_dc < 0 < lam.real
        assert s.signs_agree
