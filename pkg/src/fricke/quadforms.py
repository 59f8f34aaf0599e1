"""Positive definite binary quadratic forms and Hurwitz class numbers.

A form [a,b,c] = aX^2 + bXY + cY^2 of discriminant b^2 - 4ac = -d < 0 is
reduced when |b| <= a <= c with b >= 0 if |b| = a or a = c.  The
Hurwitz-Kronecker class number H(d) counts PSL_2(Z)-classes weighting the
class of a(X^2+Y^2) by 1/2 and a(X^2+XY+Y^2) by 1/3.

For a level N the set of forms with N | a carries an action of the Fricke
group Gamma_0(N)*, and its orbits are in bijection with the full set of
PSL_2(Z)-classes; class lists at level N are enumerated through that
bijection, transporting the stabilizer weights (so the weights always sum
to H(d)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .errors import BadDiscriminant


@dataclass(frozen=True)
class BinaryQF:
    """Positive definite integral binary quadratic form [a, b, c]."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.disc() >= 0:
            raise ValueError(f"form {self} is not positive definite")

    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def transform(self, alpha: int, beta: int, gamma: int, delta: int) -> BinaryQF:
        """Substitution (X, Y) -> (alpha X + beta Y, gamma X + delta Y)."""
        a, b, c = self.a, self.b, self.c
        a2 = a * alpha * alpha + b * alpha * gamma + c * gamma * gamma
        b2 = 2 * a * alpha * beta + b * (alpha * delta + beta * gamma) + 2 * c * gamma * delta
        c2 = a * beta * beta + b * beta * delta + c * delta * delta
        return BinaryQF(a2, b2, c2)

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (-a < b <= a <= c):
            return False
        return b >= 0 if a == c else True

    def root(self) -> tuple[int, int, int]:
        """The root (-b + i sqrt(d)) / (2a) as the data (a, b, d)."""
        return (self.a, self.b, -self.disc())


def reduce_gamma(Q: BinaryQF) -> BinaryQF:
    """The unique reduced representative of Q's PSL_2(Z)-class."""
    a, b, c = Q.a, Q.b, Q.c
    while True:
        if c < a:
            a, b, c = c, -b, a  # (X,Y) -> (-Y,X)
            continue
        if b > a or b <= -a:
            # translate b into (-a, a]
            k = (a - b) // (2 * a)
            b2 = b + 2 * k * a
            c = a * k * k + b * k + c
            b = b2
            continue
        break
    if a == c and b < 0:
        b = -b
    return BinaryQF(a, b, c)


def _weight(reduced: BinaryQF) -> int:
    """Stabilizer order of a reduced form in PSL_2(Z): 2, 3 or 1."""
    if reduced.b == 0 and reduced.a == reduced.c:
        return 2
    if reduced.a == reduced.b == reduced.c:
        return 3
    return 1


def _check_disc(d: int) -> None:
    if d <= 0 or d % 4 not in (0, 3):
        raise BadDiscriminant(f"d = {d} is not congruent to 0 or 3 mod 4")


@lru_cache(maxsize=None)
def reduced_forms(d: int) -> tuple[BinaryQF, ...]:
    """All reduced forms of discriminant -d."""
    _check_disc(d)
    forms: list[BinaryQF] = []
    for b in range(d % 2, isqrt(d // 3) + 1, 2):
        ac4 = b * b + d
        if ac4 % 4:
            continue
        ac = ac4 // 4
        for a in range(max(b, 1), isqrt(ac) + 1):
            if ac % a:
                continue
            c = ac // a
            F = BinaryQF(a, b, c)
            if F.is_reduced():
                forms.append(F)
            if b and b < a < c:
                G = BinaryQF(a, -b, c)
                if G.is_reduced():
                    forms.append(G)
    return tuple(sorted(forms, key=lambda F: (F.a, F.b, F.c)))


def class_number_H(d: int) -> Fraction:
    """Hurwitz-Kronecker class number H(d)."""
    return sum((Fraction(1, _weight(F)) for F in reduced_forms(d)), Fraction(0))


def is_square_mod(x: int, m: int) -> bool:
    x %= m
    return any((r * r) % m == x for r in range(m))


def is_heegner(d: int, N: int) -> bool:
    """Whether -d is a Heegner discriminant for level N.

    Requires -d to be a square mod 4N and gcd(f, N) = 1 for every f with
    f^2 | d.  The predicate is advisory: class lists are computed for any
    d with forms of level N, whether or not this holds.
    """
    _check_disc(d)
    if not is_square_mod(-d, 4 * N):
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0 and gcd(f, N) != 1:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class ClassRep:
    """A level-N class representative with its transported weight."""

    form: BinaryQF
    weight: Fraction  # 1/|stabilizer|

    def root(self) -> tuple[int, int, int]:
        return self.form.root()


@dataclass(frozen=True)
class ClassList:
    d: int
    N: int
    classes: tuple[ClassRep, ...]

    def total_weight(self) -> Fraction:
        return sum((r.weight for r in self.classes), Fraction(0))


def _level_representative(F: BinaryQF, N: int) -> BinaryQF:
    """A form in F's PSL_2(Z)-class with N | a, b normalized into (-a, a]."""
    if N == 1:
        return F
    bound = 1
    while bound <= 8 * N + 8:
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                if gcd(x, y) != 1:
                    continue
                if F.value(x, y) % N:
                    continue
                # extend (x, y) to a unimodular matrix (x u / y v)
                g, u, v = _gcdext(x, y)
                G = F.transform(x, -v, y, u)
                a, b = G.a, G.b
                k = (a - b) // (2 * a)
                G = G.transform(1, k, 0, 1)
                return G
        bound += 1
    raise RuntimeError(f"no level-{N} representative found for {F}")


def _gcdext(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


@lru_cache(maxsize=None)
def classes_level(d: int, N: int) -> ClassList:
    """One representative with N | a per Fricke-orbit of level-N forms.

    Returns an empty list when -d is not a square mod 4N.  The weights are
    transported through the bijection with PSL_2(Z)-classes, which makes
    sum(weights) = H(d) automatic; the CM-value test suite is what checks
    that this convention matches the analytic traces.
    """
    _check_disc(d)
    if not is_square_mod(-d, 4 * N):
        return ClassList(d, N, ())
    reps = []
    for F in reduced_forms(d):
        G = _level_representative(F, N)
        assert G.a % N == 0 and G.disc() == -d
        reps.append(ClassRep(form=G, weight=Fraction(1, _weight(F))))
    return ClassList(d, N, tuple(reps))
