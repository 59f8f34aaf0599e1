import mpmath as mp
import pytest

from fricke.cm import (
    CMPoint,
    cm_product_side,
    eta_eval,
    hauptmodul_eval,
    heegner_points,
    numeric_trace,
    singular_moduli,
)
from fricke.errors import LowerHalfPlane, UnsupportedLevel
from fricke.product import product_side, trace_J


def close(a, b, eps):
    return mp.fabs(a - b) < eps


class TestEta:
    def test_eta_at_i_closed_form(self):
        with mp.workprec(220):
            want = mp.gamma(mp.mpf(1) / 4) / (2 * mp.pi ** (mp.mpf(3) / 4))
            got = eta_eval(mp.mpc(0, 1), 180)
            assert close(got, want, mp.mpf(2) ** -170)

    def test_translation_law(self):
        with mp.workprec(160):
            for tau in (mp.mpc(0.3, 0.8), mp.mpc(-1.7, 0.2), mp.mpc(5.25, 3.0)):
                lhs = eta_eval(tau + 1, 128)
                rhs = mp.exp(1j * mp.pi / 12) * eta_eval(tau, 128)
                assert close(lhs, rhs, mp.mpf(2) ** -100)

    def test_inversion_law(self):
        with mp.workprec(160):
            for tau in (mp.mpc(0.1, 0.4), mp.mpc(-0.8, 1.9), mp.mpc(2.0, 0.05)):
                lhs = eta_eval(-1 / tau, 128)
                rhs = mp.sqrt(-1j * tau) * eta_eval(tau, 128)
                assert close(lhs, rhs, mp.mpf(2) ** -100)

    def test_lower_half_plane(self):
        with pytest.raises(LowerHalfPlane):
            eta_eval(mp.mpc(0, -1), 64)


class TestHauptmodulValues:
    def test_cm_value_level2(self):
        val = hauptmodul_eval(2, mp.mpc(1, 1) / 2, 128)
        assert mp.fabs(val + 104) < mp.mpf(10) ** -20

    def test_j_at_i(self):
        val = hauptmodul_eval(1, mp.mpc(0, 1), 128)
        assert mp.fabs(val - (1728 - 744)) < mp.mpf(10) ** -20

    def test_series_consistency_high_in_tau(self):
        # compare against the exact expansion at tau = 0.3 + 1.4i
        from fricke.hauptmodul import hauptmodul_expand

        with mp.workprec(200):
            tau = mp.mpc(0.3, 1.4)
            q = mp.exp(2j * mp.pi * tau)
            for N in (2, 5):
                t = hauptmodul_expand(N, 60)
                approx = sum(
                    mp.mpf(int(c)) * q**e for e, c in sorted(t.coeffs.items())
                )
                exact = hauptmodul_eval(N, tau, 160)
                assert mp.fabs(approx - exact) < mp.mpf(10) ** -30

    def test_unsupported_level(self):
        with pytest.raises(UnsupportedLevel):
            hauptmodul_eval(4, mp.mpc(0, 1), 64)


class TestCMProduct:
    def test_heegner_points_level2_d4(self):
        pts = heegner_points(2, 4)
        assert len(pts) == 1
        pt, w = pts[0]
        assert w == mp.mpf(0.5) or str(w) == "1/2"
        assert pt.a % 2 == 0

    @pytest.mark.parametrize("N,d", [(2, 4), (3, 3), (1, 3)])
    def test_rounds_to_exact_series(self, N, d):
        series, residual, bits = cm_product_side(N, d, 10, 192)
        exact = product_side(N, d, 10)
        prec = min(series.prec, exact.prec)
        assert series.truncate(prec) == exact.truncate(prec)
        assert residual < 1e-10

    def test_residual_shrinks_with_bits(self):
        _, r64, _ = cm_product_side(2, 4, 6, 64)
        _, r192, _ = cm_product_side(2, 4, 6, 192)
        assert r192 < r64 or r192 < 1e-40

    @pytest.mark.parametrize("N,d,mmax", [(2, 4, 5), (3, 3, 4), (6, 8, 3)])
    def test_numeric_trace_matches_exact(self, N, d, mmax):
        for m in range(1, mmax + 1):
            exact = trace_J(N, m, d)
            num = numeric_trace(N, m, d, 192)
            want = mp.mpf(exact.numerator) / exact.denominator
            assert mp.fabs(num - want) < mp.mpf(10) ** -10

    def test_singular_moduli_in_upper_half_plane(self):
        for pt, w, val in singular_moduli(6, 12, 96):
            assert pt.to_mpc().imag > 0
            assert mp.isfinite(val)


def test_cmpoint_location():
    pt = CMPoint(a=2, b=2, d=4)
    z = pt.to_mpc()
    assert mp.fabs(z - mp.mpc(-0.5, 0.5)) < 1e-30
