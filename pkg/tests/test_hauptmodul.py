import pytest

from fricke.errors import UnsupportedLevel
from fricke.hauptmodul import (
    SUPPORTED_LEVELS,
    check_composition,
    check_compression,
    faber,
    faber_expansion,
    hauptmodul_expand,
    hecke_T,
    replicate,
)

#: first coefficients, frozen after cross-validation by the replication
#: identity t_m = t|T(m) (m <= 6) and the product-identity suite
KNOWN_COEFFS = {
    1: [196884, 21493760, 864299970],
    2: [4372, 96256, 1240002, 10698752, 74428120],
    3: [783, 8672, 65367],
    5: [134, 760, 3345],
    6: [79, 352, 1431],
}


class TestExpansion:
    @pytest.mark.parametrize("N", SUPPORTED_LEVELS)
    def test_normalization(self, N):
        t = hauptmodul_expand(N, 24)
        assert t.lead == -1 and t.coeff(-1) == 1
        assert t.coeff(0) == 0
        assert t.is_integral()

    @pytest.mark.parametrize("N", sorted(KNOWN_COEFFS))
    def test_known_coefficients(self, N):
        t = hauptmodul_expand(N, 8)
        got = [int(t.coeff(k)) for k in range(1, 1 + len(KNOWN_COEFFS[N]))]
        assert got == KNOWN_COEFFS[N]

    def test_level_one_is_shifted_j(self):
        from fricke.forms import j_function

        assert hauptmodul_expand(1, 10) == j_function(10) - 744

    def test_level_four_rejected(self):
        with pytest.raises(UnsupportedLevel):
            hauptmodul_expand(4, 5)

    def test_unsupported_level(self):
        with pytest.raises(UnsupportedLevel):
            hauptmodul_expand(7, 5)


class TestReplicate:
    def test_prime_divisions(self):
        assert replicate(6, 2) == 3
        assert replicate(6, 3) == 2
        assert replicate(6, 6) == 1
        assert replicate(2, 5) == 2
        assert replicate(2, 2) == 1

    def test_prime_powers_stabilize(self):
        assert replicate(6, 4) == 3
        assert replicate(2, 8) == 1
        assert replicate(5, 25) == 1

    def test_identity(self):
        for N in SUPPORTED_LEVELS:
            assert replicate(N, 1) == N


class TestFaber:
    @pytest.mark.parametrize("N", SUPPORTED_LEVELS)
    def test_defining_congruence(self, N):
        # t_n - q^{-n} lies in q Z[[q]] for n <= 10
        for n in range(1, 11):
            s = faber_expansion(N, n, 12)
            assert s.coeff(-n) == 1
            for e in range(-n + 1, 1):
                assert s.coeff(e) == 0
            assert s.is_integral()

    def test_degree_one(self):
        P = faber(2, 1, 10)
        assert P.coefficients == (0, 1)

    def test_level_one_classical(self):
        # P_2 for j - 744: t^2 - 2 * 196884 + ... checked via expansion
        P = faber(1, 2, 12)
        assert P.coefficients[2] == 1
        s = faber_expansion(1, 2, 6)
        assert s.coeff(-2) == 1 and s.coeff(-1) == 0 and s.coeff(0) == 0


class TestHecke:
    def test_T1_is_identity(self):
        for N in (1, 2, 6):
            assert hecke_T(N, 1, 1, 20) == hauptmodul_expand(N, 20)

    @pytest.mark.parametrize("N", SUPPORTED_LEVELS)
    def test_replication_formula(self, N):
        for m in range(2, 7):
            assert faber_expansion(N, m, 41) == hecke_T(N, 1, m, 41)

    def test_two_adic_tower_level2(self):
        # t_{l 2^{k+1}} = t^{(2)}_{l 2^k}(2 tau) + t^{(2)}_{l 2^k}(tau) - t_{l 2^k}(tau)
        from fricke.series import scale_exponents

        N, p = 2, 2
        for l, k in ((1, 0), (1, 1), (3, 0)):
            idx = l * p**k
            Np = replicate(N, p)
            lhs = faber_expansion(N, idx * p, 20)
            rhs = (
                scale_exponents(faber_expansion(Np, idx, 12), p).truncate(20)
                + faber_expansion(Np, idx, 20)
                - faber_expansion(N, idx, 20)
            )
            assert lhs.truncate(20) == rhs.truncate(20)

    @pytest.mark.parametrize("N,p", [(2, 2), (3, 3), (5, 5), (6, 2), (6, 3)])
    def test_composition(self, N, p):
        for k in (0, 1, 2):
            assert check_composition(N, p, k, 24)

    @pytest.mark.parametrize("N,p", [(2, 2), (3, 3), (5, 5), (6, 2), (6, 3)])
    def test_compression(self, N, p):
        ls = [l for l in (1, 2, 3, 5) if l % p]
        for l in ls[:2]:
            for k in (0, 1):
                assert check_compression(N, p, l, k, 20)

    def test_composition_requires_dividing_prime(self):
        with pytest.raises(ValueError):
            check_composition(2, 3, 1, 10)
