"""Shared hypothesis strategies and exact brute-force oracles."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from fricke.series import QSeries

small_rationals = st.builds(
    Fraction,
    st.integers(min_value=-30, max_value=30),
    st.integers(min_value=1, max_value=6),
)


@st.composite
def qseries(draw, min_lead=-6, max_prec=14, allow_zero=True):
    prec = draw(st.integers(min_value=4, max_value=max_prec))
    exps = draw(
        st.lists(st.integers(min_value=min_lead, max_value=prec - 1), max_size=8)
    )
    coeffs = {e: draw(small_rationals) for e in set(exps)}
    s = QSeries(coeffs, prec)
    if not allow_zero and s.is_zero():
        s = QSeries({min_lead: 1, **coeffs}, prec)
    return s


@st.composite
def invertible_qseries(draw):
    s = draw(qseries(allow_zero=False))
    if not s.coeffs.get(s.lead):
        s = s + QSeries({s.lead: 1}, s.prec)
    return s


def poly_mul(a: list[Fraction], b: list[Fraction], n: int) -> list[Fraction]:
    """Truncated schoolbook product of coefficient lists (oracle)."""
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j, y in enumerate(b[: n - i]):
            if y:
                out[i + j] += x * y
    return out


def euler_product_oracle(exponent: int, m: int, n: int) -> list[Fraction]:
    """Direct expansion of prod_{k>=1} (1 - q^{mk})^exponent to n terms."""
    out = [Fraction(0)] * n
    out[0] = Fraction(1)
    for k in range(1, n // m + 1):
        factor = [Fraction(0)] * n
        factor[0] = Fraction(1)
        if m * k < n:
            factor[m * k] = Fraction(-1)
        power = [Fraction(0)] * n
        power[0] = Fraction(1)
        e = abs(exponent)
        for _ in range(e):
            power = poly_mul(power, factor, n)
        if exponent < 0:
            power = series_inverse_oracle(power, n)
        out = poly_mul(out, power, n)
    return out


def series_inverse_oracle(a: list[Fraction], n: int) -> list[Fraction]:
    assert a[0] == 1
    b = [Fraction(0)] * n
    b[0] = Fraction(1)
    for k in range(1, n):
        b[k] = -sum(a[j] * b[k - j] for j in range(1, k + 1))
    return b


def sigma_oracle(k: int, n: int) -> int:
    """Divisor power sum by direct enumeration."""
    return sum(d**k for d in range(1, n + 1) if n % d == 0)
