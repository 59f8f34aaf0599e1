"""High-precision complex evaluation of eta quotients at CM points.

Supplies the numerical oracle for singular moduli: eta is evaluated by
moving the argument into the fundamental domain with the generators
tau -> tau + 1 and tau -> -1/tau (tracking multipliers), then summing the
pentagonal-number series.  Hauptmodul values t(alpha_Q) at Heegner points
feed the numeric side of the product identity, which must round to the
exact integer series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import LowerHalfPlane, RoundingTooLarge, UnsupportedLevel
from .hauptmodul import SUPPORTED_LEVELS, faber, hauptmodul_expand
from .quadforms import class_number_H, classes_level
from .series import QSeries, pow_int


@dataclass(frozen=True)
class ComplexHP:
    """A complex value tagged with the working precision that produced it."""

    real: str
    imag: str
    working_bits: int

    @staticmethod
    def from_mpc(z: mp.mpc, bits: int) -> ComplexHP:
        return ComplexHP(real=mp.nstr(z.real, 40), imag=mp.nstr(z.imag, 40), working_bits=bits)


@dataclass(frozen=True)
class CMPoint:
    """alpha_Q = (-b + i sqrt(d)) / (2a) for a form [a, b, *] of disc -d."""

    a: int
    b: int
    d: int

    def to_mpc(self) -> mp.mpc:
        return mp.mpc(-self.b, mp.sqrt(self.d)) / (2 * self.a)


def _to_mpc(tau) -> mp.mpc:
    if isinstance(tau, CMPoint):
        return tau.to_mpc()
    if isinstance(tau, ComplexHP):
        return mp.mpc(mp.mpf(tau.real), mp.mpf(tau.imag))
    return mp.mpc(tau)


def eta_eval(tau, bits: int = 192) -> mp.mpc:
    """Dedekind eta at tau (Im tau > 0) to roughly `bits` of accuracy."""
    with mp.workprec(bits + 32):
        z = _to_mpc(tau)
        if z.imag <= 0:
            raise LowerHalfPlane(f"eta requires Im(tau) > 0, got {z}")
        mult = mp.mpc(1)
        # reduce to |Re| <= 1/2, |z| >= 1 (so Im >= sqrt(3)/2)
        for _ in range(10000):
            n = mp.nint(z.real)
            if n:
                # eta(z) = e^{-i pi n / 12} eta(z + n) read backwards:
                # shifting z -> z - n multiplies eta by e^{i pi n / 12}
                z = z - n
                mult *= mp.exp(1j * mp.pi * n / 12)
            if mp.fabs(z) < 1 - mp.mpf(2) ** (-bits // 2):
                # eta(z) = sqrt(i / z) eta(-1/z)
                mult *= mp.sqrt(1j / z)
                z = -1 / z
            else:
                break
        else:  # pragma: no cover
            raise RuntimeError("eta reduction did not converge")
        q = mp.exp(2j * mp.pi * z)
        # eta = q^{1/24} sum_{n in Z} (-1)^n q^{n(3n-1)/2}
        total = mp.mpc(1)
        n = 1
        while True:
            e1 = n * (3 * n - 1) // 2
            e2 = n * (3 * n + 1) // 2
            term = (-1) ** n * (q**e1 + q**e2)
            total += term
            if mp.fabs(q) ** e1 < mp.mpf(2) ** (-(bits + 16)):
                break
            n += 1
        return mult * mp.exp(2j * mp.pi * z / 24) * total


def _eta_quotient_eval(factors, tau, bits: int) -> mp.mpc:
    with mp.workprec(bits + 32):
        z = _to_mpc(tau)
        out = mp.mpc(1)
        for m, e in factors:
            out *= eta_eval(m * z, bits) ** e
        return out


def hauptmodul_eval(N: int, tau, bits: int = 192) -> mp.mpc:
    """Numerical value of the level-N Hauptmodul at tau."""
    if N not in SUPPORTED_LEVELS:
        raise UnsupportedLevel(f"level {N} is not supported")
    with mp.workprec(bits + 32):
        z = _to_mpc(tau)
        if z.imag <= 0:
            raise LowerHalfPlane(f"Im(tau) must be positive, got {z}")
        if N == 1:
            # j = (y + 16)^3 / y with y = 2^12 (eta(2t)/eta(t))^24
            y = 4096 * _eta_quotient_eval(((2, 24), (1, -24)), z, bits)
            return (y + 16) ** 3 / y - 744
        if N == 6:
            v = _eta_quotient_eval(((2, 12), (3, 12), (1, -12), (6, -12)), z, bits)
            return v + 1 / v - 12
        data = {2: (24, 24, 4096), 3: (12, 12, 729), 5: (6, 6, 125)}
        k, shift, fricke = data[N]
        lam = _eta_quotient_eval(((1, k), (N, -k)), z, bits)
        return lam + shift + fricke / lam


def heegner_points(N: int, d: int) -> list[tuple[CMPoint, Fraction]]:
    """CM points alpha_Q with weights 1/w_Q for the level-N classes of -d."""
    out = []
    for rep in classes_level(d, N).classes:
        a, b, dd = rep.root()
        out.append((CMPoint(a=a, b=b, d=dd), rep.weight))
    return out


def singular_moduli(N: int, d: int, bits: int = 192) -> list[tuple[CMPoint, Fraction, mp.mpc]]:
    """Each Heegner point with its weight and Hauptmodul value."""
    return [(pt, w, hauptmodul_eval(N, pt, bits)) for pt, w in heegner_points(N, d)]


def numeric_trace(N: int, m: int, d: int, bits: int = 192) -> mp.mpc:
    """sum_Q (1/w_Q) t_m(alpha_Q) evaluated numerically (Faber polynomial)."""
    P = faber(N, m, m + 8)
    with mp.workprec(bits + 32):
        total = mp.mpc(0)
        for _, w, value in singular_moduli(N, d, bits):
            acc = mp.mpc(0)
            for c in reversed(P.coefficients):
                acc = acc * value + c
            total += mp.mpf(w.numerator) / w.denominator * acc
        return total


def cm_product_side(N: int, d: int, terms: int, bits: int = 192,
                    max_bits: int = 1024) -> tuple[QSeries, float, int]:
    """Numeric expansion of the delta-th power of prod (t - t(alpha_Q))^{1/w}.

    Expands the polynomial prod_Q (X - t(alpha_Q))^{delta/w_Q} with complex
    coefficients, substitutes the exact q-expansion of t, and rounds each
    coefficient to the nearest integer.  Returns (rounded series, max
    rounding residual, bits used); raises RoundingTooLarge if the residual
    never drops below 1e-6 while doubling precision up to max_bits.
    """
    delta = class_number_H(d).denominator
    degree = int(class_number_H(d) * delta)
    t = hauptmodul_expand(N, terms + degree + 2)
    t_pows = [QSeries({0: 1}, terms + degree + 2)]
    for _ in range(degree):
        t_pows.append((t_pows[-1] * t).truncate(terms + degree + 2))
    current = bits
    while True:
        with mp.workprec(current + 64):
            poly = [mp.mpc(0)] * (degree + 1)
            poly[0] = mp.mpc(1)
            deg = 0
            for _, w, value in singular_moduli(N, d, current):
                e = delta // w.denominator * w.numerator  # delta / w_Q
                assert delta % w.denominator == 0
                for _ in range(e):
                    new = [mp.mpc(0)] * (degree + 1)
                    for i in range(deg + 1):
                        new[i + 1] += poly[i]
                        new[i] -= poly[i] * value
                    poly = new
                    deg += 1
            assert deg == degree
            # sum_k poly[k] * t^k; the deepest power pins the joint precision
            prec_out = terms + 3
            coeffs: dict[int, mp.mpc] = {}
            for k in range(degree + 1):
                if poly[k] == 0:
                    continue
                for e, c in t_pows[k].coeffs.items():
                    if e >= prec_out:
                        continue
                    coeffs[e] = coeffs.get(e, mp.mpc(0)) + poly[k] * mp.mpf(
                        c.numerator
                    ) / c.denominator
            rounded: dict[int, int] = {}
            residual = mp.mpf(0)
            for e, c in coeffs.items():
                n = int(mp.nint(c.real))
                residual = max(residual, mp.fabs(c.real - n), mp.fabs(c.imag))
                if n:
                    rounded[e] = n
        if residual < 1e-6:
            return QSeries(rounded, prec_out), float(residual), current
        if current >= max_bits:
            raise RoundingTooLarge(
                f"residual {float(residual):.3e} at {current} bits for (N={N}, d={d})"
            )
        current *= 2
