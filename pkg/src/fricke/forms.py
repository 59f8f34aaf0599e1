"""Level-one generators and eta/theta building blocks.

Provides the normalized Eisenstein series E_k, the discriminant
Delta = q prod (1-q^n)^24, the modular invariant j = E_4^3/Delta, general
Dedekind eta quotients prod eta(m*tau)^e (+ constant), and the weight-1/2
theta series theta = 1 + 2 sum q^{n^2}.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import FractionalExponent, UnsupportedWeight
from .series import QSeries, inv, pow_int

_bernoulli_cache: dict[int, Fraction] = {0: Fraction(1)}
_bernoulli_lock = threading.Lock()


def _binom_int(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2), cached per process."""
    with _bernoulli_lock:
        if n in _bernoulli_cache:
            return _bernoulli_cache[n]
        top = max(_bernoulli_cache) + 1
        for m in range(top, n + 1):
            # sum_{j=0}^{m} binom(m+1, j) B_j = 0
            s = Fraction(0)
            for j in range(m):
                s += _binom_int(m + 1, j) * _bernoulli_cache[j]
            _bernoulli_cache[m] = -s / (m + 1)
        return _bernoulli_cache[n]


def _divisor_power_sums(k: int, prec: int) -> list[int]:
    """sigma_k(n) for 0 <= n < prec (entry 0 unused)."""
    sig = [0] * max(prec, 1)
    for d in range(1, prec):
        dk = d**k
        for n in range(d, prec, d):
            sig[n] += dk
    return sig


@lru_cache(maxsize=None)
def eisenstein(k: int, prec: int) -> QSeries:
    """Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k < 4 or k % 2:
        raise UnsupportedWeight(f"E_{k} is not supported (need even k >= 4)")
    factor = Fraction(-2 * k) / bernoulli(k)
    sig = _divisor_power_sums(k - 1, prec)
    coeffs: dict[int, Fraction] = {0: Fraction(1)}
    for n in range(1, prec):
        coeffs[n] = factor * sig[n]
    return QSeries(coeffs, prec)


@lru_cache(maxsize=None)
def _euler_product(m: int, prec: int) -> QSeries:
    """prod_{n>=1} (1 - q^{mn}) via the pentagonal number expansion."""
    coeffs: dict[int, Fraction] = {0: Fraction(1)}
    k = 1
    while True:
        e1 = m * k * (3 * k - 1) // 2
        e2 = m * k * (3 * k + 1) // 2
        if e1 >= prec and e2 >= prec:
            break
        sign = -1 if k % 2 else 1
        if e1 < prec:
            coeffs[e1] = Fraction(sign)
        if e2 < prec:
            coeffs[e2] = Fraction(sign)
        k += 1
    return QSeries(coeffs, prec)


@dataclass(frozen=True)
class EtaQuotientSpec:
    """A formal product prod_i eta(m_i tau)^{e_i} plus an additive constant.

    Multipliers must be distinct and the leading q-power sum(m*e)/24 must
    be an integer so the expansion lives in integer exponents.
    """

    factors: tuple[tuple[int, int], ...]
    additive_constant: Fraction = field(default_factory=lambda: Fraction(0))

    def __post_init__(self):
        if not self.factors:
            raise ValueError("factors must be nonempty")
        ms = [m for m, _ in self.factors]
        if len(set(ms)) != len(ms) or any(m < 1 for m in ms):
            raise ValueError("multipliers must be distinct positive integers")

    def leading_power(self) -> Fraction:
        return Fraction(sum(m * e for m, e in self.factors), 24)


@lru_cache(maxsize=None)
def _eta_quotient_core(factors: tuple[tuple[int, int], ...], prec: int) -> QSeries:
    shift = Fraction(sum(m * e for m, e in factors), 24)
    if shift.denominator != 1:
        raise FractionalExponent(f"leading power {shift} of eta quotient is not an integer")
    lead = int(shift)
    # unit part must be known to prec - lead terms
    length = prec - lead
    out = QSeries({0: 1}, length)
    for m, e in factors:
        out = out * pow_int(_euler_product(m, length), e) if e >= 0 else out * pow_int(
            inv(_euler_product(m, length)), -e
        )
        out = out.truncate(length)
    return QSeries({e + lead: c for e, c in out.coeffs.items()}, prec)


def eta_quotient(spec: EtaQuotientSpec, prec: int) -> QSeries:
    """Exact expansion of the eta quotient described by ``spec``."""
    core = _eta_quotient_core(tuple(spec.factors), prec)
    if spec.additive_constant:
        core = core + QSeries({0: spec.additive_constant}, prec)
    return core


@lru_cache(maxsize=None)
def delta(prec: int) -> QSeries:
    """Modular discriminant q prod (1-q^n)^24."""
    return _eta_quotient_core(((1, 24),), prec)


@lru_cache(maxsize=None)
def j_function(prec: int) -> QSeries:
    """Modular invariant j = E_4^3 / Delta = q^{-1} + 744 + 196884 q + ..."""
    # E_4^3 needs prec+1 terms so the quotient by Delta (lead 1) keeps prec.
    e4 = eisenstein(4, prec + 2)
    return (pow_int(e4, 3) * inv(delta(prec + 2))).truncate(prec)


@lru_cache(maxsize=None)
def theta(prec: int) -> QSeries:
    """theta = 1 + 2 sum_{n>=1} q^{n^2}, the weight-1/2 plus-space generator."""
    coeffs: dict[int, Fraction] = {0: Fraction(1)}
    for n in range(1, isqrt(max(prec - 1, 0)) + 1):
        coeffs[n * n] = Fraction(2)
    return QSeries(coeffs, prec)
