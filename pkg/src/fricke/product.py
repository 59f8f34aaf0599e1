"""Product identities tying Hauptmoduls to plus-space coefficients.

For a level N and discriminant -d the weighted product over Heegner points

    prod_Q (t(tau) - t(alpha_Q))^{1/w_Q}
      = q^{-H(d)} prod_{u>=1} (1 - q^u)^{A*(u^2,d)},

with A*(u^2,d) = 2^{s(u,N)} A(u^2,d) and s(u,N) the number of distinct
primes dividing gcd(u,N).  Everything here works with the delta-th power
of that identity (delta = denominator of H(d)) so all exponents and
coefficients stay integral.  Two independent expansion routes are
implemented: the literal product over u, and the exponential of the
trace generating series sum J_m(d) q^m / m with

    J_m(d) = -sum_{u|m} u B*(u^2,d) = sum_{u|m} u A*(u^2,d),

plus the recursion that recovers the exponents A*(m^2,d) from the product
coefficients c(m) and vice versa.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NonIntegralResult, NoSuchIndex, UnsupportedLevel
from .hauptmodul import SUPPORTED_LEVELS
from .plusspace import WEIGHT_HALF, _ensure_family, build_fd
from .quadforms import class_number_H, classes_level, is_square_mod
from .series import QSeries, exp_series

_PRIMES = (2, 3, 5)


def s_factor(u: int, N: int) -> int:
    """Number of distinct primes dividing gcd(u, N)."""
    g = gcd(u, N)
    return sum(1 for p in _PRIMES if g % p == 0)


def _a_table(N: int, d: int, umax: int) -> dict[int, int]:
    """A(u^2, d) for 1 <= u <= umax, from a single f-family build."""
    if not is_square_mod(-d, 4 * N):
        raise NoSuchIndex(f"no f_{d} at level {N}")
    fam = _ensure_family(N, WEIGHT_HALF, d, umax * umax + 1)
    f = fam[d]
    return {u: int(f.coeff(u * u)) for u in range(1, umax + 1)}


def a_star(N: int, u: int, d: int) -> int:
    """A*(u^2, d) = 2^{s(u,N)} A(u^2, d)."""
    A = _a_table(N, d, u)
    return (1 << s_factor(u, N)) * A[u]


def a_star_table(N: int, d: int, umax: int) -> dict[int, int]:
    A = _a_table(N, d, umax)
    return {u: (1 << s_factor(u, N)) * A[u] for u in A}


def trace_J(N: int, m: int, d: int) -> Fraction:
    """Weighted trace J_m(d) of the Faber polynomial t_m over Heegner points.

    Computed exactly through the coefficient identity
    J_m(d) = -sum_{u|m} u B*(u^2,d) with B(u^2,d) = -A(u^2,d);
    e.g. J_1(4) = -52 at level 2, matching (1/2) t((1+i)/2) = -52.
    """
    if classes_level(d, N).classes == ():
        raise NoSuchIndex(f"no Heegner points of discriminant -{d} at level {N}")
    table = a_star_table(N, d, m)
    return Fraction(sum(u * table[u] for u in range(1, m + 1) if m % u == 0))


def _delta(d: int) -> int:
    return class_number_H(d).denominator


def _binomial_factor(u: int, E: int, prec: int) -> QSeries:
    """(1 - q^u)^E truncated at q^prec, exact for any integer E."""
    out: dict[int, int] = {}
    j = 0
    c = 1
    while j * u < prec:
        out[j * u] = c
        # next binomial coefficient of (1-x)^E: C(E, j+1)(-1)^{j+1}
        c = c * (j - E) // (j + 1)
        j += 1
    return QSeries(out, prec)


def product_side(N: int, d: int, terms: int) -> QSeries:
    """delta-th power of the product route:

    q^{-delta H(d)} prod_{u=1}^{terms} (1 - q^u)^{delta A*(u^2,d)}.
    """
    delta = _delta(d)
    table = a_star_table(N, d, terms)
    shift = -(class_number_H(d) * delta)
    assert shift.denominator == 1
    prec = terms + 1
    acc = QSeries({0: 1}, prec)
    for u in range(1, terms + 1):
        acc = acc * _binomial_factor(u, delta * table[u], prec)
        acc = acc.truncate(prec)
    assert acc.is_integral()
    return QSeries({e + int(shift): c for e, c in acc.coeffs.items()}, prec + int(shift))


def trace_side(N: int, d: int, terms: int) -> QSeries:
    """delta-th power of the trace route:

    q^{-delta H(d)} exp(-delta sum_{m=1}^{terms} J_m(d) q^m / m).
    """
    delta = _delta(d)
    table = a_star_table(N, d, terms)
    shift = -(class_number_H(d) * delta)
    assert shift.denominator == 1
    prec = terms + 1
    arg: dict[int, Fraction] = {}
    for m in range(1, terms + 1):
        Jm = Fraction(sum(u * table[u] for u in range(1, m + 1) if m % u == 0))
        if Jm:
            arg[m] = -delta * Jm / m
    acc = exp_series(QSeries(arg, prec))
    assert acc.is_integral()
    return QSeries({e + int(shift): c for e, c in acc.coeffs.items()}, prec + int(shift))


@dataclass(frozen=True)
class ProductCertificate:
    """Record of one product-identity verification."""

    level: int
    disc: int
    delta: int
    terms: int
    product_side: QSeries
    trace_side: QSeries
    a_star: dict[int, int]
    cm_side: QSeries | None = None
    cm_residual: float | None = None

    @property
    def status(self) -> str:
        return "match" if self.first_mismatch is None else "mismatch"

    @property
    def first_mismatch(self) -> int | None:
        prec = min(self.product_side.prec, self.trace_side.prec)
        if self.cm_side is not None:
            prec = min(prec, self.cm_side.prec)
        lead = min(self.product_side.lead, self.trace_side.lead)
        for e in range(lead, prec):
            vals = {self.product_side.coeff(e), self.trace_side.coeff(e)}
            if self.cm_side is not None:
                vals.add(self.cm_side.coeff(e))
            if len(vals) > 1:
                return e
        return None

    def to_json(self) -> dict:
        out = {
            "level": self.level,
            "disc": self.disc,
            "delta": self.delta,
            "terms": self.terms,
            "status": self.status,
            "first_mismatch": self.first_mismatch,
            "a_star": {str(u): v for u, v in sorted(self.a_star.items())},
            "product_side": self.product_side.to_json(),
            "trace_side": self.trace_side.to_json(),
        }
        if self.cm_side is not None:
            out["cm_side"] = self.cm_side.to_json()
            out["cm_residual"] = self.cm_residual
        return out


def verify_theorem(N: int, d: int, terms: int = 30, with_cm: bool = False,
                   cm_bits: int = 192) -> ProductCertificate:
    """Expand both exact routes (optionally the numeric CM route) and compare."""
    if N not in SUPPORTED_LEVELS:
        raise UnsupportedLevel(
            f"level {N} is not supported"
            + (": the product identity fails numerically for N = 4" if N == 4 else "")
        )
    if classes_level(d, N).classes == ():
        raise NoSuchIndex(f"discriminant -{d} has no Heegner points at level {N}")
    cert_kwargs: dict = {}
    if with_cm:
        from .cm import cm_product_side

        cm, residual, _ = cm_product_side(N, d, terms, cm_bits)
        cert_kwargs = {"cm_side": cm, "cm_residual": residual}
    return ProductCertificate(
        level=N,
        disc=d,
        delta=_delta(d),
        terms=terms,
        product_side=product_side(N, d, terms),
        trace_side=trace_side(N, d, terms),
        a_star=a_star_table(N, d, terms),
        **cert_kwargs,
    )


def recursion_A_from_c(N: int, d: int, c: list[int], M: int | None = None,
                       require_integral: bool = True) -> list[Fraction]:
    """Recover A*(m^2,d) for m = 1..M from product coefficients c(m).

    c are the coefficients of the delta-th power series 1 + sum c(m) q^m.
    The recursion is

    A*(m^2,d) = -c(m)/delta
                - (1/m) [ sum_{u|m, u<m} u A*(u^2,d)
                          + sum_{k<m} c(m-k) sum_{u|k} u A*(u^2,d) ].
    """
    delta = _delta(d)
    M = len(c) if M is None else M
    if M > len(c):
        raise ValueError("need at least M product coefficients")
    A: list[Fraction] = [Fraction(0)] * (M + 1)
    dsum: list[Fraction] = [Fraction(0)] * (M + 1)  # sum_{u|k} u A*(u^2)
    for m in range(1, M + 1):
        partial = sum((u * A[u] for u in range(1, m) if m % u == 0), Fraction(0))
        cross = sum((c[m - k - 1] * dsum[k] for k in range(1, m)), Fraction(0))
        Am = -Fraction(c[m - 1], delta) - (partial + cross) / m
        if require_integral and Am.denominator != 1:
            raise NonIntegralResult(
                f"A*({m}^2,{d}) = {Am} is not an integer; product coefficients inconsistent"
            )
        A[m] = Am
        dsum[m] = partial + m * Am
    return A[1:]


def recursion_c_from_A(N: int, d: int, M: int,
                       a_values: list[Fraction] | None = None) -> list[Fraction]:
    """Product coefficients c(m) for m = 1..M from the exponents A*(m^2,d).

    Inverts recursion_A_from_c; by default the A* values are read off the
    constructed plus form f_{d,N}.
    """
    delta = _delta(d)
    if a_values is None:
        table = a_star_table(N, d, M)
        A = [Fraction(table[u]) for u in range(1, M + 1)]
    else:
        A = [Fraction(a) for a in a_values]
    if len(A) < M:
        raise ValueError("need at least M exponent values")
    c: list[Fraction] = []
    dsum: list[Fraction] = [Fraction(0)] * (M + 1)
    for m in range(1, M + 1):
        dsum[m] = sum((u * A[u - 1] for u in range(1, m + 1) if m % u == 0), Fraction(0))
        total = delta * dsum[m] + sum((c[m - k - 1] * delta * dsum[k] for k in range(1, m)), Fraction(0))
        c.append(-total / m)
    return c
