"""Nearly holomorphic plus-space forms of weight 1/2 and 3/2 on Gamma_0(4N).

The weight-1/2 family f_d = q^{-d} + sum_{D>0} A(D,d) q^D is supported on
exponents that are squares mod 4N; the weight-3/2 family
g_D = q^{-D} + sum_{d>=0} B(D,d) q^d on exponents whose negatives are
squares mod 4N.  Both families are generated here by exact linear algebra
over the rationals:

* seeds for weight 1/2 are theta and the Rankin-Cohen brackets
  [theta, E_{12-2n}(4N tau)]_n / Delta(4N tau) for n = 1..4 (these are
  automatically supported on the right residues);

* seeds for weight 3/2 are the products theta(tau) theta(r tau)^2 for
  r | N (plus theta(2t)theta(3t)theta(6t) at N = 6) and their brackets
  against E_{12-2n}(4N tau); these are not plus forms themselves, so the
  builder first extracts the subspace of combinations supported on the
  admissible residues before echelonizing;

* deeper poles come from multiplying established forms by j(4N tau) and
  from bracketing them again, exactly as for the initial seeds.

Row reduction pivots on the most negative exponent first and then
back-substitutes, which makes the output canonical: any spanning set that
contains the form at all yields the identical series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import LinearAlgebraFailure, NoSuchIndex
from .forms import EtaQuotientSpec, delta, eisenstein, eta_quotient, j_function, theta
from .series import QSeries, derivative, inv, scale_exponents
from .quadforms import is_square_mod

WEIGHT_HALF = "half"
WEIGHT_THREE_HALVES = "three_halves"

#: how each composite-level weight-3/2 family is generated: pairs (p, M)
#: with pM = N; the index-raising transport V_p maps the level-M family
#: into the level-N one, staying inside the theta-decomposable subspace
#: where the q^{-D} + O(1) principal part determines the form.
_G_TRANSPORT_ROUTES: dict[int, tuple[tuple[int, int], ...]] = {
    2: ((2, 1),),
    3: ((3, 1),),
    5: ((5, 1),),
    6: ((2, 3), (3, 2)),
}


def _binom_frac(x: Fraction, j: int) -> Fraction:
    """Generalized binomial x(x-1)...(x-j+1)/j! for rational x."""
    out = Fraction(1)
    for i in range(j):
        out *= x - i
    return out / factorial(j)


def cohen_bracket(f: QSeries, k1: Fraction | int, g: QSeries, k2: Fraction | int, n: int) -> QSeries:
    """Rankin-Cohen bracket of weights (k1, k2) and order n.

    [f, g]_n = sum_{r+s=n} (-1)^r C(n+k1-1, s) C(n+k2-1, r) f^{(r)} g^{(s)}
    with f^{(r)} the r-fold application of q d/dq.  The result transforms
    with weight k1 + k2 + 2n; here that fact is only used as a recipe.
    """
    if n < 0:
        raise ValueError("bracket order must be >= 0")
    k1 = Fraction(k1)
    k2 = Fraction(k2)
    df: list[QSeries] = [f]
    dg: list[QSeries] = [g]
    for _ in range(n):
        df.append(derivative(df[-1]))
        dg.append(derivative(dg[-1]))
    total: QSeries | None = None
    for r in range(n + 1):
        s = n - r
        c = _binom_frac(n + k1 - 1, s) * _binom_frac(n + k2 - 1, r)
        if r % 2:
            c = -c
        term = c * (df[r] * dg[s])
        total = term if total is None else total + term
    assert total is not None
    return total


def valid_exponent(N: int, weight: str, e: int) -> bool:
    """Plus-space support condition at exponent e."""
    if weight == WEIGHT_HALF:
        return is_square_mod(e, 4 * N)
    return is_square_mod(-e, 4 * N)


def v_transport(series: QSeries, p: int, M: int) -> QSeries:
    """Collapse of the index-raising operator V_p on an index-M form.

    The input series lists coefficients C(d) of a weight-3/2 form whose
    underlying two-variable coefficients are c(n, r) = C(4Mn - r^2).  The
    output coefficient at a discriminant d of index Mp is read off any
    representation (n, r) of d:

        C'(d) = C(d) + p [p | n and p | r] C(d / p^2),

    and every representation is checked to give the same value (the sum
    over divisors of (n, r, p) collapses consistently for these forms).
    """
    P = 4 * M * p
    start = series.lead * p * p if series.lead < 0 else 0
    prec = series.prec

    def read(x: int) -> Fraction:
        if x >= prec:
            raise ValueError("insufficient precision in transport input")
        return series.coeffs.get(x, Fraction(0))

    # representations r (two periods, to exercise distinct (n, r) lifts)
    reps: dict[int, list[int]] = {}
    for dr in range(P):
        reps[dr] = [r for r in range(2 * P) if (dr + r * r) % P == 0]
    out: dict[int, Fraction] = {}
    for d in range(start, prec):
        rs = reps[d % P]
        if not rs:
            continue
        vals = set()
        for r in rs:
            n = (d + r * r) // P
            v = read(d)
            if n % p == 0 and r % p == 0:
                v = v + p * read(d // (p * p))
            vals.add(v)
        if len(vals) != 1:
            raise LinearAlgebraFailure(
                f"transport value at q^{d} depends on the representation (p={p}, M={M})"
            )
        v = vals.pop()
        if v:
            out[d] = v
    return QSeries(out, prec)


def valid_f_indices(N: int, max_d: int) -> list[int]:
    """Pole orders d (including 0) admissible for f_{d,N}."""
    return [d for d in range(0, max_d + 1) if is_square_mod(-d, 4 * N)]


def valid_g_indices(N: int, max_D: int) -> list[int]:
    """Pole orders D admissible for g_{D,N}."""
    return [D for D in range(1, max_D + 1) if is_square_mod(D, 4 * N)]


@dataclass(frozen=True)
class PlusForm:
    """A constructed plus-space form with its defining data."""

    level: int
    weight_tag: str  # WEIGHT_HALF or WEIGHT_THREE_HALVES
    index: int  # pole order (0 allowed for theta)
    series: QSeries

    def coeff(self, e: int) -> Fraction:
        return self.series.coeff(e)

    def validate(self) -> None:
        s = self.series
        if self.index > 0:
            assert s.lead == -self.index and s.coeff(-self.index) == 1
        else:
            assert s.lead == 0 and s.coeff(0) == 1
        assert s.is_integral(), "plus form with non-integer coefficient"
        for e in s.support():
            assert valid_exponent(self.level, self.weight_tag, e), (
                f"support violation at q^{e} (level {self.level}, {self.weight_tag})"
            )


class _Builder:
    """Echelonized span of plus-space candidates for one (level, weight)."""

    def __init__(self, N: int, weight: str, max_depth: int, prec: int, *, seed_order: int = 0):
        self.N = N
        self.weight = weight
        self.max_depth = max_depth
        self.prec = prec
        # each j(4N tau) ladder rung and each Delta(4N tau) division costs
        # 4N known terms, as does every bracket generation in the
        # enrichment loop, so deep families need deep seeds
        self.work = prec + max_depth + 32 * N + 2
        if weight == WEIGHT_THREE_HALVES and N == 1:
            # plus projection needs more inadmissible exponents than rows
            window = min(max_depth, 4) + 4
            rows_est = 20 + 2 * window
            self.work = max(self.work, 2 * (rows_est + 40) + max_depth + 8)
        self.seed_order = seed_order  # nonzero permutes seeds (uniqueness tests)
        self.pivots: dict[int, QSeries] = {}  # lead exponent -> monic row
        self._bracketed: set[int] = set()
        self._j4N: QSeries | None = None
        self._build()

    # -- building blocks ------------------------------------------------

    def _at_4N(self, series_fn, extra: int = 2) -> QSeries:
        inner = -(-self.work // (4 * self.N)) + extra
        return scale_exponents(series_fn(inner), 4 * self.N)

    def _inv_delta_4N(self) -> QSeries:
        return inv(self._at_4N(delta))

    def _j_4N(self) -> QSeries:
        if self._j4N is None:
            self._j4N = self._at_4N(j_function)
        return self._j4N

    def _bracket_family(self, h: QSeries, k1: Fraction) -> list[QSeries]:
        out = []
        inv_d = self._inv_delta_4N()
        for n in (1, 2, 3, 4):
            k2 = 12 - 2 * n
            E = self._at_4N(lambda p, k=k2: eisenstein(k, p))
            out.append(cohen_bracket(h, k1, E, k2, n) * inv_d)
        return out

    def _seeds(self) -> list[QSeries]:
        W = self.work
        th = theta(W)
        if self.weight == WEIGHT_HALF:
            rows = [th] + self._bracket_family(th, Fraction(1, 2))
        elif self.N == 1:
            rows = self._seeds_three_halves_level_one(th)
        else:
            rows = self._transport_rows()
        if self.seed_order:
            k = self.seed_order % len(rows)
            rows = rows[k:] + rows[:k]
        return [r.truncate(self.work) for r in rows]

    def _seeds_three_halves_level_one(self, th: QSeries) -> list[QSeries]:
        """Weight-3/2 candidates on Gamma_0(4) with the theta^3 multiplier.

        theta^3 and three eta quotients span the holomorphic directions;
        the ladder by powers of the weight-0 function (eta_1/eta_4)^8
        supplies one new pole depth per step, so the plus projection can
        reach every admissible pole order in the seed window.
        """
        W = self.work
        bases = [(th * th * th).truncate(W)]
        bases += [
            eta_quotient(EtaQuotientSpec(spec), W)
            for spec in (
                ((1, 18), (2, -9), (4, -6)),  # theta^3 (eta_1/eta_2)^24, pole 1
                ((1, 10), (2, -9), (4, 2)),
                ((1, -14), (2, 15), (4, 2)),
            )
        ]
        rows = list(bases)
        for b in bases:
            rows.extend(self._bracket_family(b, Fraction(3, 2)))
        window = min(self.max_depth, 4) + 4
        x = eta_quotient(EtaQuotientSpec(((1, 8), (4, -8))), W)
        power = x
        for _ in range(window):
            rows.append((bases[0] * power).truncate(W))
            rows.append((bases[1] * power).truncate(W))
            power = (power * x).truncate(W + window)
        return rows

    def _transport_rows(self) -> list[QSeries]:
        """Image seeds for composite levels via index-raising transports.

        Each row is the collapse of V_p applied to a lower-level family
        member (or its j(4M tau)-multiples), so every row lies in the
        theta-decomposable subspace where poles pin forms down uniquely.
        """
        W = self.work
        rows: list[QSeries] = []
        for p, M in _G_TRANSPORT_ROUTES[self.N]:
            depth_in = self.max_depth + 8 * M + 2
            lower = _ensure_family(M, WEIGHT_THREE_HALVES, depth_in, W + 8 * M + 4)
            inner = -(-(W + 12 * M) // (4 * M)) + 2
            j4M = scale_exponents(j_function(inner), 4 * M)
            for _, form in sorted(lower.items()):
                s = form.series
                for _ in range(3):
                    rows.append(v_transport(s, p, M))
                    s = (s * j4M).truncate(W + 4)
        return rows

    # -- plus projection -------------------------------------------------

    def _plus_kernel(self, rows: list[QSeries]) -> list[QSeries]:
        """Combinations of rows supported only on admissible exponents.

        The elimination runs over a bounded window of inadmissible
        exponents; every returned combination is then verified over the
        full known range, widening the window if anything leaked through.
        """
        if not rows:
            return []
        lo = min(r.lead for r in rows)
        hi = min(r.prec for r in rows)
        bad_all = [e for e in range(lo, hi) if not valid_exponent(self.N, self.weight, e)]
        if all(not any(e in r.coeffs for e in bad_all) for r in rows):
            return rows  # already plus-supported
        ncols = len(rows) + 32
        while True:
            out = self._kernel_pass(rows, bad_all[:ncols])
            leak = [
                r for r in out if any(e in r.coeffs for e in bad_all)
            ]
            if not leak:
                return out
            if ncols >= len(bad_all):
                raise LinearAlgebraFailure("precision too low for plus-space projection")
            ncols = min(2 * ncols, len(bad_all))

    @staticmethod
    def _kernel_pass(rows: list[QSeries], bad: list[int]) -> list[QSeries]:
        # Gaussian elimination on [M | I]; rows of I where M vanished give
        # the kernel combinations.
        mat = [[r.coeffs.get(e, Fraction(0)) for e in bad] for r in rows]
        lam = [[Fraction(int(i == j)) for j in range(len(rows))] for i in range(len(rows))]
        pivot_row = 0
        for col in range(len(bad)):
            sel = None
            for i in range(pivot_row, len(mat)):
                if mat[i][col]:
                    sel = i
                    break
            if sel is None:
                continue
            mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
            lam[pivot_row], lam[sel] = lam[sel], lam[pivot_row]
            inv_p = 1 / mat[pivot_row][col]
            mat[pivot_row] = [x * inv_p for x in mat[pivot_row]]
            lam[pivot_row] = [x * inv_p for x in lam[pivot_row]]
            for i in range(len(mat)):
                if i != pivot_row and mat[i][col]:
                    f = mat[i][col]
                    mat[i] = [a - f * b for a, b in zip(mat[i], mat[pivot_row])]
                    lam[i] = [a - f * b for a, b in zip(lam[i], lam[pivot_row])]
            pivot_row += 1
            if pivot_row == len(mat):
                break
        out = []
        for i in range(len(mat)):
            if any(mat[i]):
                continue
            combo: QSeries | None = None
            for coef, row in zip(lam[i], rows):
                if coef:
                    term = coef * row
                    combo = term if combo is None else combo + term
            if combo is not None and not combo.is_zero():
                out.append(combo)
        return out

    # -- echelon ----------------------------------------------------------

    def _echelon_insert(self, rows: list[QSeries]) -> bool:
        progress = False
        for row in rows:
            row = row.truncate(self.work)
            while not row.is_zero():
                lead = row.lead
                piv = self.pivots.get(lead)
                if piv is None:
                    assert valid_exponent(self.N, self.weight, lead), (
                        f"pivot at inadmissible exponent {lead}"
                    )
                    self.pivots[lead] = row * (1 / row.coeff(lead))
                    progress = True
                    break
                row = row - row.coeff(lead) * piv
        return progress

    def _targets(self) -> list[int]:
        if self.weight == WEIGHT_HALF:
            return valid_f_indices(self.N, self.max_depth)
        return valid_g_indices(self.N, self.max_depth)

    def _missing(self) -> list[int]:
        return [d for d in self._targets() if -d not in self.pivots]

    # -- main loop ---------------------------------------------------------

    def _ladder_rows(self) -> list[QSeries]:
        new = []
        for d in self._missing():
            prev = -(d - 4 * self.N)
            if d - 4 * self.N >= 0 and prev in self.pivots:
                new.append((self.pivots[prev] * self._j_4N()).truncate(self.work))
        return new

    def _bracket_next_pivot(self) -> bool:
        """Bracket the shallowest not-yet-bracketed pivot; True on progress."""
        k1 = Fraction(1, 2) if self.weight == WEIGHT_HALF else Fraction(3, 2)
        for lead in sorted(self.pivots, reverse=True):
            if lead in self._bracketed:
                continue
            self._bracketed.add(lead)
            if self._echelon_insert(self._bracket_family(self.pivots[lead], k1)):
                return True
        return False

    def _build(self) -> None:
        self._echelon_insert(self._plus_kernel(self._seeds()))
        rounds = 0
        while self._missing():
            rounds += 1
            if rounds > 16 * (self.max_depth + 8):
                raise LinearAlgebraFailure(
                    f"could not isolate pole orders {self._missing()} "
                    f"(level {self.N}, {self.weight})"
                )
            ladder = self._ladder_rows()
            if ladder and self._echelon_insert(ladder):
                continue
            if not self._bracket_next_pivot():
                raise LinearAlgebraFailure(
                    f"no progress isolating {self._missing()} "
                    f"(level {self.N}, {self.weight})"
                )
        self._back_substitute()

    def _back_substitute(self) -> None:
        leads = sorted(self.pivots)
        for lead in leads:
            row = self.pivots[lead]
            for other in leads:  # ascending: later pivots cannot reintroduce
                if other <= lead:
                    continue
                c = row.coeffs.get(other)
                if c:
                    row = row - c * self.pivots[other]
            self.pivots[lead] = row

    def family(self) -> dict[int, PlusForm]:
        out: dict[int, PlusForm] = {}
        for d in self._targets():
            row = self.pivots[-d]
            assert row.prec >= self.prec, f"precision shortfall at pole {d}"
            form = PlusForm(
                level=self.N, weight_tag=self.weight, index=d, series=row.truncate(self.prec)
            )
            form.validate()
            out[d] = form
        return out


# several (depth, prec) profiles coexist per (N, weight): a deep/shallow
# family for duality ranges, a shallow/deep one for product expansions
_family_cache: dict[tuple[int, str], list[tuple[int, int, dict[int, PlusForm]]]] = {}


def _ensure_family(N: int, weight: str, max_depth: int, prec: int) -> dict[int, PlusForm]:
    key = (N, weight)
    entries = _family_cache.setdefault(key, [])
    for cdepth, cprec, fam in entries:
        if cdepth >= max_depth and cprec >= prec:
            return fam
    # bucket the requests so nearby calls share one build
    depth = max(max_depth, 4 * N - 1)
    depth += (-depth) % (4 * N)
    prec = prec + (-prec) % 32
    fam = _Builder(N, weight, depth, prec).family()
    entries.append((depth, prec, fam))
    if len(entries) > 4:
        entries.pop(0)
    return fam


def default_prec(N: int, index: int) -> int:
    return 40 * N + index


def build_fd(N: int, d: int, prec: int | None = None) -> PlusForm:
    """The unique weight-1/2 plus form q^{-d} + O(q) at level N (f_0 = theta)."""
    if d < 0 or not is_square_mod(-d, 4 * N):
        raise NoSuchIndex(f"-{d} is not a square mod {4 * N}; no f_{d} at level {N}")
    prec = prec if prec is not None else default_prec(N, d)
    return _ensure_family(N, WEIGHT_HALF, d, prec)[d]


def build_gD(N: int, D: int, prec: int | None = None) -> PlusForm:
    """The unique weight-3/2 plus form q^{-D} + O(1) at level N."""
    if D < 1 or not is_square_mod(D, 4 * N):
        raise NoSuchIndex(f"{D} is not a square mod {4 * N}; no g_{D} at level {N}")
    prec = prec if prec is not None else default_prec(N, D)
    return _ensure_family(N, WEIGHT_THREE_HALVES, D, prec)[D]


@dataclass(frozen=True)
class DualityReport:
    N: int
    Dmax: int
    dmax: int
    checked: int
    violations: tuple[tuple[int, int, int, int], ...]  # (D, d, A, B)

    @property
    def ok(self) -> bool:
        return not self.violations


def duality_check(N: int, Dmax: int, dmax: int) -> DualityReport:
    """Verify A(D, d) = -B(D, d) over all valid pairs in the given range."""
    f_fam = _ensure_family(N, WEIGHT_HALF, dmax, Dmax + 2)
    g_fam = _ensure_family(N, WEIGHT_THREE_HALVES, Dmax, dmax + 2)
    fs = {d: f_fam[d] for d in valid_f_indices(N, dmax) if d > 0}
    gs = {D: g_fam[D] for D in valid_g_indices(N, Dmax)}
    checked = 0
    bad = []
    for D, g in gs.items():
        for d, f in fs.items():
            A = f.coeff(D)
            B = g.coeff(d)
            checked += 1
            if A != -B:
                bad.append((D, d, int(A), int(B)))
    return DualityReport(N=N, Dmax=Dmax, dmax=dmax, checked=checked, violations=tuple(bad))


def kronecker(a: int, p: int) -> int:
    """Kronecker symbol (a/p) for prime p, including the p = 2 extension."""
    if p == 2:
        if a % 2 == 0:
            return 0
        return 1 if a % 8 in (1, 7) else -1
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def hecke_half_integral(g: PlusForm, p: int) -> QSeries:
    """Weight-3/2 Hecke action on coefficients:

    the q^d coefficient of g|T_p is B(d p^2) + ((-d)/p) B(d) + p B(d/p^2),
    with B read from g and B(d/p^2) = 0 unless p^2 | d.
    """
    assert g.weight_tag == WEIGHT_THREE_HALVES
    s = g.series
    p2 = p * p
    prec_out = (s.prec - 1) // p2 + 1
    start = p2 * s.lead if s.lead < 0 else s.lead
    out: dict[int, Fraction] = {}
    for d in range(start, prec_out):
        val = s.coeff(d * p2) if s.lead <= d * p2 < s.prec else Fraction(0)
        val += kronecker(-d, p) * s.coeff(d)
        if d % p2 == 0:
            val += p * s.coeff(d // p2)
        if val:
            out[d] = val
    return QSeries(out, prec_out)
