"""Tests for the closed-form torsion quantities.

The central oracle is the consistency chain: the group torsion minus the
current-pairing integral plus the I-class fixed-point term must equal the
assembled infinitesimal torsion series, each side computed by an
independent route (special-function values and quadrature on one side,
exact series coefficients on the other).
"""

from mpmath import mp
import pytest

from p1torsion import specfun, torsion
from p1torsion.numerics import eval_const
from p1torsion.torsion import CancellationError


class TestConsistencyChain:
    @pytest.mark.parametrize("ell", [-4, -1, 0, 2, 5])
    @pytest.mark.parametrize("t", ["0.4", "1.3"])
    def test_group_minus_tdchs_plus_iclass(self, ell, t):
        mp.dps = 40
        tv = mp.mpf(t)
        lhs = (torsion.torsion_group(ell, tv, dps=40)
               - torsion.tdchs_value(ell, tv, dps=40).payload
               + torsion.i_class_value(ell, tv, dps=40))
        rhs = torsion.torsion_infinitesimal(ell, order=40).payload.evaluate(
            tv, dps=40)
        # truncating the even series at order 40 leaves (t/2pi)^42 behind
        assert abs(lhs - rhs) < mp.mpf(10) ** -25

    def test_infinitesimal_is_even_power_series(self):
        res = torsion.torsion_infinitesimal(3, order=14)
        series = res.payload
        assert series.min_degree == 0
        assert all(d % 2 == 0 for d in series.degrees())

    def test_order_too_small_rejected(self):
        with pytest.raises(ValueError):
            torsion.torsion_infinitesimal(0, order=2)


class TestGroupTorsion:
    def test_twist_reflection_symmetry(self):
        # only |ell + 1| enters: ell and -2 - ell give the same torsion
        mp.dps = 30
        t = mp.mpf("0.9")
        for ell in (0, 1, 4, -7):
            a = torsion.torsion_group(ell, t, dps=30)
            b = torsion.torsion_group(-2 - ell, t, dps=30)
            assert abs(a - b) < mp.mpf(10) ** -28

    def test_domain_errors(self):
        for bad_t in (0, -0.5, 6.5, 7.0):
            with pytest.raises(ValueError):
                torsion.torsion_group(0, bad_t, dps=30)

    def test_untwisted_log_sum_vanishes(self):
        # |ell + 1| <= 1 has no log-sum: pure 2 R^rot cos/sin
        mp.dps = 30
        t = mp.mpf("1.1")
        got = torsion.torsion_group(0, t, dps=30)
        want = (2 * specfun.r_rot_value(t, dps=30) * mp.cos(t / 2)
                / mp.sin(t / 2))
        assert abs(got - want) < mp.mpf(10) ** -28


class TestIClass:
    @pytest.mark.parametrize("ell", [-3, 0, 2])
    def test_series_matches_value(self, ell):
        mp.dps = 40
        t = mp.mpf("0.5")
        series_val = torsion.i_class_series(ell, order=40).evaluate(t, dps=40)
        value = torsion.i_class_value(ell, t, dps=40)
        assert abs(series_val - value) < mp.mpf(10) ** -20

    @pytest.mark.parametrize("t", ["0.6", "1.7"])
    def test_value_matches_direct_bilateral_sum(self, t):
        mp.dps = 40
        tv = mp.mpf(t)
        for ell in (0, 3):
            a = torsion.i_class_value(ell, tv, dps=40)
            b = torsion.i_class_direct(ell, tv, dps=40)
            assert abs(a - b) < mp.mpf(10) ** -30

    def test_prefactor_parity(self):
        # cos((ell+1)t/2) is even in ell + 1
        s1 = torsion.i_class_series(2, order=12)
        s2 = torsion.i_class_series(-4, order=12)
        for d in range(0, 13):
            assert s1.coeff(d) == s2.coeff(d)

    def test_direct_domain_error(self):
        with pytest.raises(ValueError):
            torsion.i_class_direct(0, 7.0, dps=30)


class TestTdchs:
    @pytest.mark.parametrize("ell", [-2, 0, 3])
    def test_series_matches_quadrature(self, ell):
        mp.dps = 40
        t = mp.mpf("0.8")
        series = torsion.tdchs_series(ell, order=36).payload
        got = series.evaluate(t, dps=40)
        want = torsion.tdchs_value(ell, t, dps=40).payload
        assert abs(got - want) < mp.mpf(10) ** -25

    def test_twist_reflection_symmetry(self):
        a = torsion.tdchs_series(1, order=12).payload
        b = torsion.tdchs_series(-3, order=12).payload
        for d in range(-2, 13):
            assert a.coeff(d) == b.coeff(d)


class TestOscillatoryIntegral:
    @pytest.mark.parametrize("ell,t", [(10, "1.0"), (25, "0.4"), (4, "2.0")])
    def test_sici_closed_form_matches_quadrature(self, ell, t):
        mp.dps = 30
        tv = mp.mpf(t)
        quad = torsion.oscillatory_integral_quad(ell, tv, dps=30)
        closed = torsion.oscillatory_integral_sici(ell, tv, dps=30)
        assert abs(quad - closed) < mp.mpf(10) ** -20

    def test_closed_form_needs_positive_twist(self):
        with pytest.raises(ValueError):
            torsion.oscillatory_integral_sici(-2, 1.0, dps=30)


class TestAsymptotic:
    def test_matches_integral_at_large_ell(self):
        mp.dps = 20
        t = mp.mpf("1.0")
        ell = 400
        exact = torsion.tdchs_value(ell, t, dps=20).payload
        approx = torsion.torsion_asymptotic(ell, t, dps=20)
        assert abs(exact - approx) < mp.mpf("0.05")


class TestTwoParameter:
    def test_r_two_variable_reduces_to_rotation_term(self):
        # R(theta, 0) = 2i R^rot(theta)
        mp.dps = 40
        for th in (mp.mpf("0.7"), mp.mpf("2.0")):
            got = torsion.r_two_variable(th, 0, dps=40)
            want = 2j * specfun.r_rot_value(th, dps=40)
            assert abs(got - want) < mp.mpf(10) ** -30

    def test_two_routes_agree_internally(self):
        # torsion_two_param raises if its Lerch route and its direct
        # bilateral-sum route disagree; a successful value is the test
        mp.dps = 30
        val = torsion.torsion_two_param(2, mp.mpf("0.9"), mp.mpf("0.3"),
                                        dps=30, tol=mp.mpf(10) ** -20)
        assert mp.isfinite(val)

    def test_reduces_to_group_torsion_as_t_vanishes(self):
        mp.dps = 30
        s = mp.mpf("1.2")
        group = torsion.torsion_group(1, s, dps=30)
        prev = None
        for t in (mp.mpf("1e-2"), mp.mpf("1e-3")):
            val = torsion.torsion_two_param(1, s, t, dps=30)
            err = abs(val - group)
            if prev is not None:
                assert err < prev / 5  # linear vanishing in t
            prev = err
        assert prev < mp.mpf("5e-3")

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            torsion.torsion_two_param(0, 0.0, 0.5, dps=30)
        with pytest.raises(ValueError):
            torsion.torsion_two_param(0, 4.0, 3.0, dps=30)


class TestRTilde0:
    def test_conjugation_symmetry(self):
        # coefficients are conjugated under phi -> 2 pi - phi, x -> conj(x)
        mp.dps = 30
        phi = mp.mpf("1.3")
        x = mp.mpc("0.2", "0.1")
        a = torsion.r_tilde0(phi, x, dps=30)
        b = torsion.r_tilde0(2 * mp.pi - phi, mp.conj(x), dps=30)
        assert abs(a - mp.conj(b)) < mp.mpf(10) ** -25

    def test_divergence_guard(self):
        # |x| >= phi is outside the radius of convergence
        with pytest.raises(ArithmeticError):
            torsion.r_tilde0(mp.mpf("0.1"), mp.mpf("2.0"), dps=20,
                             max_terms=60)
