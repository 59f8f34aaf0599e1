"""Verification suites binding every module to the reference tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .fixtures import fixtures
from .hauptmodul import SUPPORTED_LEVELS, faber_expansion, hauptmodul_expand, hecke_T
from .plusspace import build_fd, build_gD, duality_check, hecke_half_integral
from .product import a_star_table, recursion_A_from_c, recursion_c_from_A, verify_theorem
from .quadforms import class_number_H, classes_level, is_square_mod


@dataclass
class SuiteReport:
    suite: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        out = []
        for name, ok, detail in self.checks:
            mark = "ok" if ok else "FAIL"
            out.append(f"[{mark}] {name}" + (f": {detail}" if detail else ""))
        return out

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "checks": [
                {"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks
            ],
        }


def _levels(level: int | None) -> list[int]:
    return [level] if level else list(SUPPORTED_LEVELS)


def suite_classnumbers(level: int | None = None, max_disc: int = 200) -> SuiteReport:
    rep = SuiteReport("classnumbers")
    for d, want in sorted(fixtures().class_numbers.items()):
        got = class_number_H(d)
        rep.add(f"H({d}) = {want}", got == want, f"got {got}")
    for N in _levels(level):
        bad = []
        for d in range(3, max_disc + 1):
            if d % 4 not in (0, 3) or not is_square_mod(-d, 4 * N):
                continue
            cl = classes_level(d, N)
            if cl.total_weight() != class_number_H(d):
                bad.append(d)
        rep.add(f"sum of weights = H(d) for d <= {max_disc}, level {N}", not bad,
                f"violations at {bad}" if bad else "")
    return rep


def suite_appendix(level: int | None = None) -> SuiteReport:
    rep = SuiteReport("appendix")
    fx = fixtures()
    for N in fx.appendix_levels():
        if level and N != level:
            continue
        for d in fx.appendix_discs(N):
            table = fx.tables[N][d]
            f = build_fd(N, d, prec=max(table) + 1)
            bad = {e: (int(f.coeff(e)), c) for e, c in table.items() if f.coeff(e) != c}
            rep.add(f"f_{d} at level {N} ({len(table)} printed coefficients)",
                    not bad, str(bad) if bad else "all match")
    h2 = hauptmodul_expand(2, 6)
    want = fx.hauptmodul_level2
    got = tuple(int(h2.coeff(k)) for k in range(1, 6))
    rep.add("level-2 Hauptmodul coefficients", got == want, f"{got}")
    return rep


def suite_duality(level: int | None = None, Dmax: int = 25, dmax: int = 100) -> SuiteReport:
    rep = SuiteReport("duality")
    for N in _levels(level):
        r = duality_check(N, Dmax, dmax)
        rep.add(
            f"A(D,d) = -B(D,d), level {N}, D <= {Dmax}, d <= {dmax}",
            r.ok,
            f"{r.checked} pairs" + ("" if r.ok else f", violations {r.violations[:4]}"),
        )
        g1 = build_gD(N, 1, prec=2)
        rep.add(f"B(1,0) = -2 at level {N}", g1.coeff(0) == -2, f"got {g1.coeff(0)}")
    return rep


def suite_replication(level: int | None = None, max_m: int = 8, terms: int = 40) -> SuiteReport:
    rep = SuiteReport("replication")
    for N in _levels(level):
        for m in range(1, max_m + 1):
            lhs = faber_expansion(N, m, terms)
            rhs = hecke_T(N, 1, m, terms)
            rep.add(f"t_{m} = t|T({m}) at level {N} ({terms} terms)", lhs == rhs)
    return rep


def suite_theorem(level: int | None = None, terms: int = 30, with_cm: bool = False) -> SuiteReport:
    rep = SuiteReport("theorem")
    for N, d in fixtures().theorem_pairs():
        if level and N != level:
            continue
        cert = verify_theorem(N, d, terms=terms, with_cm=with_cm)
        rep.add(f"product identity at (N={N}, d={d}), {terms} terms",
                cert.status == "match",
                f"delta={cert.delta}" + ("" if cert.status == "match"
                                         else f" first mismatch at q^{cert.first_mismatch}"))
    ex = fixtures().recursion_example
    cert = verify_theorem(ex["level"], ex["disc"], terms=max(4, len(ex["c"])))
    got = [int(cert.product_side.coeff(e))
           for e in range(cert.product_side.lead + 1, cert.product_side.lead + 1 + len(ex["c"]))]
    rep.add("worked product coefficients 1 + 104q + 4372q^2 + ...",
            got == ex["c"], f"{got}")
    return rep


def suite_recursion(level: int | None = None, upto: int = 20) -> SuiteReport:
    rep = SuiteReport("recursion")
    ex = fixtures().recursion_example
    got = [int(a) for a in recursion_A_from_c(ex["level"], ex["disc"], ex["c"])]
    rep.add("exponents from worked product coefficients", got == ex["a_star"], f"{got}")
    for N, d in ((2, 4), (3, 3), (6, 8)):
        if level and N != level:
            continue
        c = recursion_c_from_A(N, d, upto)
        back = recursion_A_from_c(N, d, [int(x) for x in c], require_integral=True)
        table = a_star_table(N, d, upto)
        ok = [int(x) for x in back] == [table[u] for u in range(1, upto + 1)]
        rep.add(f"c <-> A* round trip to m = {upto} at (N={N}, d={d})", ok)
    return rep


def suite_cm(level: int | None = None, bits: int = 192) -> SuiteReport:
    from .cm import cm_product_side, hauptmodul_eval, numeric_trace
    from .product import product_side, trace_J

    rep = SuiteReport("cm")
    with mp.workprec(bits + 32):
        val = hauptmodul_eval(2, mp.mpc(1, 1) / 2, 128)
        rep.add("t((1+i)/2) = -104 at level 2 (128 bits)",
                abs(val + 104) < mp.mpf(10) ** -20, mp.nstr(abs(val + 104), 3))
        val1 = hauptmodul_eval(1, mp.mpc(0, 1), bits)
        rep.add("t(i) = 984 at level 1", abs(val1 - 984) < mp.mpf(10) ** -20)
    for N, d in ((2, 4), (3, 3), (1, 3)):
        if level and N != level:
            continue
        cm, residual, used = cm_product_side(N, d, 10, bits)
        exact = product_side(N, d, 10)
        rep.add(f"CM product rounds to the exact series at (N={N}, d={d})",
                cm == exact.truncate(cm.prec) and residual < 1e-10,
                f"residual {residual:.2e} at {used} bits")
    for N, d in ((2, 4), (3, 3)):
        if level and N != level:
            continue
        for m in (1, 2, 3):
            num = numeric_trace(N, m, d, bits)
            exact = trace_J(N, m, d)
            ok = abs(num - mp.mpf(exact.numerator) / exact.denominator) < mp.mpf(10) ** -10
            rep.add(f"numeric trace matches J_{m}({d}) at level {N}", ok)
    return rep


def suite_hecke(level: int | None = None) -> SuiteReport:
    rep = SuiteReport("hecke")
    for N in _levels(level):
        for p in (2, 3):
            g1 = build_gD(N, 1, prec=4 * p * p + 2)
            h = hecke_half_integral(g1, p)
            polar = {e: h.coeff(e) for e in h.support() if e < 0}
            want = {-1: Fraction(1), -p * p: Fraction(p)}
            rep.add(f"polar part of g_1|T_{p} at level {N} is q^-1 + {p} q^-{p*p}",
                    polar == want, f"{polar}")
    return rep


SUITES = {
    "classnumbers": suite_classnumbers,
    "appendix": suite_appendix,
    "duality": suite_duality,
    "replication": suite_replication,
    "theorem": suite_theorem,
    "recursion": suite_recursion,
    "cm": suite_cm,
    "hecke": suite_hecke,
}


def verify_all(level: int | None = None) -> list[SuiteReport]:
    return [fn(level) for fn in SUITES.values()]
