from fractions import Fraction

import pytest

from conftest import euler_product_oracle, sigma_oracle
from fricke.errors import FractionalExponent, UnsupportedWeight
from fricke.forms import (
    EtaQuotientSpec,
    bernoulli,
    delta,
    eisenstein,
    eta_quotient,
    j_function,
    theta,
)
from fricke.series import inv, pow_int


def test_bernoulli_values():
    assert [bernoulli(n) for n in (0, 1, 2, 4, 6, 8, 12)] == [
        Fraction(1), Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 30),
        Fraction(1, 42), Fraction(-1, 30), Fraction(-691, 2730),
    ]


class TestEisenstein:
    def test_e4_divisor_sums(self):
        e4 = eisenstein(4, 12)
        assert e4.coeff(0) == 1
        for n in range(1, 12):
            assert e4.coeff(n) == 240 * sigma_oracle(3, n)

    def test_e6_divisor_sums(self):
        e6 = eisenstein(6, 12)
        for n in range(1, 12):
            assert e6.coeff(n) == -504 * sigma_oracle(5, n)

    def test_constant_terms(self):
        for k in (4, 6, 8, 10, 12, 14):
            assert eisenstein(k, 3).coeff(0) == 1

    def test_e8_is_e4_squared(self):
        assert eisenstein(8, 20) == pow_int(eisenstein(4, 20), 2)

    def test_unsupported(self):
        with pytest.raises(UnsupportedWeight):
            eisenstein(2, 5)
        with pytest.raises(UnsupportedWeight):
            eisenstein(5, 5)


class TestDelta:
    def test_leading_and_integrality(self):
        d = delta(12)
        assert d.lead == 1 and d.coeff(1) == 1
        assert d.coeff(0) == 0 and d.is_integral()

    def test_against_product_oracle(self):
        d = delta(14)
        oracle = euler_product_oracle(24, 1, 13)
        for e in range(13):
            assert d.coeff(e + 1) == oracle[e]

    def test_eisenstein_construction(self):
        e4, e6 = eisenstein(4, 14), eisenstein(6, 14)
        alt = (pow_int(e4, 3) - pow_int(e6, 2)) * Fraction(1, 1728)
        assert alt.truncate(12) == delta(12)


class TestJ:
    def test_expansion(self):
        j = j_function(4)
        assert j.lead == -1 and j.coeff(-1) == 1
        assert j.coeff(0) == 744
        assert j.coeff(1) == 196884
        assert j.coeff(2) == 21493760

    def test_j_times_delta_is_e4_cubed(self):
        n = 12
        lhs = (j_function(n) * delta(n + 2)).truncate(n)
        assert lhs == pow_int(eisenstein(4, n + 2), 3).truncate(n)


class TestEtaQuotient:
    def test_level2_lambda(self):
        lam = eta_quotient(EtaQuotientSpec(((1, 24), (2, -24))), 4)
        assert [int(lam.coeff(e)) for e in range(-1, 4)] == [1, -24, 276, -2048, 11202]

    def test_trivial_quotient(self):
        spec = EtaQuotientSpec(((1, 24),))
        assert eta_quotient(spec, 10) == delta(10)

    def test_self_cancellation(self):
        # eta^24 / eta^24 collapses to the exponent-zero spec, i.e. 1
        assert eta_quotient(EtaQuotientSpec(((1, 0),)), 8).coeffs == {0: 1}
        recip = delta(8) * inv(delta(8))
        assert recip.coeff(0) == 1 and len(recip.coeffs) == 1

    def test_multiplicativity(self):
        a = eta_quotient(EtaQuotientSpec(((1, 8), (4, -8))), 10)
        b = eta_quotient(EtaQuotientSpec(((2, 12),)), 10)
        ab = eta_quotient(EtaQuotientSpec(((1, 8), (2, 12), (4, -8))), 10)
        assert (a * b).truncate(ab.prec) == ab

    def test_fractional_exponent_rejected(self):
        with pytest.raises(FractionalExponent):
            eta_quotient(EtaQuotientSpec(((1, 1),)), 5)

    def test_additive_constant(self):
        spec = EtaQuotientSpec(((1, 24), (2, -24)), additive_constant=Fraction(24))
        assert eta_quotient(spec, 3).coeff(0) == 0


class TestTheta:
    def test_first_coefficients(self):
        th = theta(5)
        assert [int(th.coeff(n)) for n in range(5)] == [1, 2, 0, 0, 2]

    def test_support_is_squares(self):
        th = theta(150)
        assert all(round(e**0.5) ** 2 == e for e in th.support())

    def test_square_support_mod_4N(self):
        from fricke.quadforms import is_square_mod

        th = theta(100)
        for N in (1, 2, 3, 5, 6):
            assert all(is_square_mod(e, 4 * N) for e in th.support())
