"""Truncated Laurent series in q with exact rational coefficients.

A QSeries models an expansion

    f = sum_{lead <= e < prec} c_e q^e   + (unknown terms of order >= prec)

with all known coefficients stored sparsely as exact ``Fraction`` values.
Truncation is contagious: every operation computes exactly how far the
result is known from how far its inputs are known, and never fabricates a
coefficient at or beyond that bound.

Values are immutable after construction and all operations are pure, so
series may be shared freely between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainError, ZeroSeries

Rat = int | Fraction


def _frac(x: Rat) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QSeries:
    """Sparse truncated Laurent series over the rationals.

    ``coeffs`` maps exponent -> nonzero Fraction, ``prec`` is the first
    unknown exponent and ``lead`` the smallest stored exponent (``lead ==
    prec`` for a series that is zero as far as it is known).
    """

    __slots__ = ("coeffs", "prec", "lead")

    def __init__(self, coeffs: Mapping[int, Rat] | Iterable[tuple[int, Rat]], prec: int):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[int, Fraction] = {}
        for e, c in items:
            if e >= prec:
                continue
            f = _frac(c)
            if f:
                clean[e] = f
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "lead", min(clean) if clean else prec)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("QSeries is immutable")

    # -- basic queries -------------------------------------------------

    def coeff(self, e: int) -> Fraction:
        """Coefficient of q^e; raises if e is beyond the known precision."""
        if e >= self.prec:
            raise DomainError(f"coefficient at q^{e} unknown (prec={self.prec})")
        return self.coeffs.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def truncate(self, prec: int) -> QSeries:
        """Forget all coefficients at exponents >= prec."""
        if prec >= self.prec:
            return self
        return QSeries({e: c for e, c in self.coeffs.items() if e < prec}, prec)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    # -- ring structure ------------------------------------------------

    def __add__(self, other: QSeries | Rat) -> QSeries:
        if not isinstance(other, QSeries):
            other = QSeries({0: _frac(other)}, self.prec)
        prec = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return QSeries(out, prec)

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries({e: -c for e, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other: QSeries | Rat) -> QSeries:
        return self + (-other if isinstance(other, QSeries) else QSeries({0: -_frac(other)}, self.prec))

    def __rsub__(self, other: Rat) -> QSeries:
        return (-self) + other

    def __mul__(self, other: QSeries | Rat) -> QSeries:
        if not isinstance(other, QSeries):
            c = _frac(other)
            return QSeries({e: c * v for e, v in self.coeffs.items()} if c else {}, self.prec)
        prec = min(self.prec + other.lead, other.prec + self.lead)
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e >= prec:
                    continue
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return QSeries(out, prec)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        """Equality of all coefficients up to the shared precision."""
        if not isinstance(other, QSeries):
            return NotImplemented
        prec = min(self.prec, other.prec)
        a = {e: c for e, c in self.coeffs.items() if e < prec}
        b = {e: c for e, c in other.coeffs.items() if e < prec}
        return a == b

    def __hash__(self):
        return hash((self.prec, tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        terms = []
        for e in self.support()[:8]:
            terms.append(f"{self.coeffs[e]}*q^{e}")
        body = " + ".join(terms) if terms else "0"
        if len(self.coeffs) > 8:
            body += " + ..."
        return f"QSeries({body} + O(q^{self.prec}))"

    def to_json(self) -> dict:
        """Canonical JSON form: exponents ascending, rationals 'num/den'."""
        return {
            "lead": self.lead,
            "prec": self.prec,
            "coeffs": [[e, f"{self.coeffs[e].numerator}/{self.coeffs[e].denominator}"]
                       for e in self.support()],
        }

    @staticmethod
    def from_json(data: dict) -> QSeries:
        coeffs = {int(e): Fraction(s) for e, s in data["coeffs"]}
        return QSeries(coeffs, int(data["prec"]))


def qs(coeffs: Mapping[int, Rat], prec: int) -> QSeries:
    """Shorthand constructor."""
    return QSeries(coeffs, prec)


def one(prec: int) -> QSeries:
    return QSeries({0: 1}, prec)


def monomial(e: int, c: Rat, prec: int) -> QSeries:
    return QSeries({e: c}, prec)


def add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def inv(a: QSeries) -> QSeries:
    """Multiplicative inverse: mul(a, inv(a)) = 1 up to available precision."""
    if a.is_zero():
        raise ZeroSeries("cannot invert a series that is zero up to its precision")
    lead = a.lead
    length = a.prec - lead  # number of known unit-part terms
    u = {e - lead: c for e, c in a.coeffs.items()}
    v: dict[int, Fraction] = {0: 1 / u[0]}
    # u * v = 1: v_m = -(sum_{j>=1} u_j v_{m-j}) / u_0
    u_support = sorted(e for e in u if e > 0)
    for m in range(1, length):
        s = Fraction(0)
        for j in u_support:
            if j > m:
                break
            w = v.get(m - j)
            if w:
                s += u[j] * w
        if s:
            v[m] = -s / u[0]
    return QSeries({e - lead: c for e, c in v.items()}, length - lead)


def pow_int(a: QSeries, n: int) -> QSeries:
    """n-fold product by binary exponentiation; negative n via inv."""
    if n < 0:
        return pow_int(inv(a), -n)
    if n == 0:
        return one(a.prec - a.lead)
    base = a
    result: QSeries | None = None
    while n:
        if n & 1:
            result = base if result is None else result * base
        n >>= 1
        if n:
            base = base * base
    assert result is not None
    return result


def derivative(a: QSeries) -> QSeries:
    """q d/dq: multiply the coefficient at q^e by e."""
    return QSeries({e: c * e for e, c in a.coeffs.items() if e != 0}, a.prec)


def scale_exponents(a: QSeries, m: int) -> QSeries:
    """Substitute q -> q^m (realizes tau -> m*tau on expansions)."""
    if m < 1:
        raise DomainError("scale_exponents requires m >= 1")
    return QSeries({m * e: c for e, c in a.coeffs.items()}, m * a.prec)


def u_operator(a: QSeries, m: int) -> QSeries:
    """Keep exponents divisible by m and divide them by m (U_m)."""
    if m < 1:
        raise DomainError("u_operator requires m >= 1")
    prec = -(-a.prec // m)  # ceil
    return QSeries({e // m: c for e, c in a.coeffs.items() if e % m == 0}, prec)


def log_series(a: QSeries) -> QSeries:
    """Formal logarithm via (log a)' = a'/a.

    Requires constant term exactly 1 and no polar part.
    """
    if a.lead < 0 or a.coeff(0) != 1:
        raise DomainError("log_series requires constant term 1 and no polar part")
    b = derivative(a) * inv(a)
    out = {e: c / e for e, c in b.coeffs.items() if e != 0}
    return QSeries(out, a.prec)


def exp_series(a: QSeries) -> QSeries:
    """Formal exponential, inverse of log_series on its domain.

    Requires a = O(q): no constant or polar part.  Uses the recurrence
    e*E_e = sum_j j*a_j*E_{e-j} obtained from E' = a'E.
    """
    if not a.is_zero() and a.lead < 1:
        raise DomainError("exp_series requires the argument to vanish at q^0")
    prec = a.prec
    E: dict[int, Fraction] = {0: Fraction(1)}
    a_support = a.support()
    for e in range(1, prec):
        s = Fraction(0)
        for j in a_support:
            if j > e:
                break
            w = E.get(e - j)
            if w:
                s += j * a.coeffs[j] * w
        if s:
            E[e] = s / e
    return QSeries(E, prec)
