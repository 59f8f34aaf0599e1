"""Command-line interface.

Subcommands: hauptmodul, faber, hecke, classnumber, forms, fd, gd, trace,
product, recursion, cm-eval, verify.  Exit codes: 0 on success or match,
1 on verification mismatch, 2 on usage errors (including level 4, where
the product identity is known to fail).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import FrickeError, UnsupportedLevel
from .hauptmodul import SUPPORTED_LEVELS, faber, faber_expansion, hauptmodul_expand, hecke_T
from .plusspace import build_fd, build_gD
from .product import recursion_A_from_c, recursion_c_from_A, trace_J, verify_theorem
from .quadforms import class_number_H, classes_level, is_heegner
from .series import QSeries
from .verify import SUITES, verify_all

DEFAULT_CM_BITS = int(os.environ.get("FRICKE_CM_BITS", "192"))


def _print_series(s: QSeries, as_json: bool) -> None:
    if as_json:
        print(json.dumps(s.to_json()))
        return
    for e in s.support():
        c = s.coeffs[e]
        print(f"{e:6d}: {c.numerator}" + (f"/{c.denominator}" if c.denominator != 1 else ""))
    print(f"  (known up to q^{s.prec})")


def _level(value: str) -> int:
    N = int(value)
    if N == 4:
        raise argparse.ArgumentTypeError(
            "level 4 is unsupported: the product identity fails numerically there "
            "(its 2-replicate is not invariant under any Fricke group)"
        )
    if N not in SUPPORTED_LEVELS:
        raise argparse.ArgumentTypeError(f"level must be one of {SUPPORTED_LEVELS}")
    return N


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fricke", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hauptmodul", help="q-expansion of the level-N Hauptmodul")
    p.add_argument("--level", type=_level, required=True)
    p.add_argument("--terms", type=int, default=16)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("faber", help="Faber polynomial t_n and its expansion")
    p.add_argument("--level", type=_level, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--terms", type=int, default=16)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("hecke", help="expansion of t_n|T(m)")
    p.add_argument("--level", type=_level, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--terms", type=int, default=16)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classnumber", help="Hurwitz class number H(d)")
    p.add_argument("--disc", type=int, required=True)

    p = sub.add_parser("forms", help="level-N class representatives of disc -d")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--level", type=_level, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("fd", help="weight-1/2 plus form f_d")
    p.add_argument("--level", type=_level, required=True)
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--terms", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gd", help="weight-3/2 plus form g_D")
    p.add_argument("--level", type=_level, required=True)
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--terms", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("trace", help="exact weighted trace J_m(d)")
    p.add_argument("--level", type=_level, required=True)
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--m", type=int, default=1)

    p = sub.add_parser("product", help="verify the product identity at (N, d)")
    p.add_argument("--level", type=_level, required=True)
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--terms", type=int, default=30)
    p.add_argument("--with-cm", action="store_true")
    p.add_argument("--bits", type=int, default=DEFAULT_CM_BITS)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("recursion", help="exponents A*(m^2,d) <-> product coefficients c(m)")
    p.add_argument("--level", type=_level, required=True)
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--upto", type=int, default=10)
    p.add_argument("--from-c", type=str, default=None,
                   help="comma-separated c(1),c(2),... to invert")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("cm-eval", help="numerical Hauptmodul values at Heegner points")
    p.add_argument("--level", type=_level, required=True)
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--bits", type=int, default=DEFAULT_CM_BITS)
    p.add_argument("--terms", type=int, default=10)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--level", type=_level, default=None)
    p.add_argument("--max-m", type=int, default=8)
    p.add_argument("--max", type=int, default=100)
    p.add_argument("--json", action="store_true")
    return ap


def _cmd_verify(args) -> int:
    if args.suite == "all":
        reports = verify_all(args.level)
    elif args.suite == "replication":
        reports = [SUITES["replication"](args.level, max_m=args.max_m)]
    elif args.suite == "duality":
        reports = [SUITES["duality"](args.level, dmax=args.max)]
    else:
        reports = [SUITES[args.suite](args.level)]
    if args.json:
        print(json.dumps([r.to_json() for r in reports]))
    else:
        for r in reports:
            print(f"== suite {r.suite}")
            for line in r.lines():
                print("  " + line)
    return 0 if all(r.ok for r in reports) else 1


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "hauptmodul":
            _print_series(hauptmodul_expand(args.level, args.terms), args.json)
        elif args.command == "faber":
            P = faber(args.level, args.n, max(args.terms, args.n + 2))
            print("coefficients (t^0 ... t^n):", list(P.coefficients))
            _print_series(faber_expansion(args.level, args.n, args.terms), args.json)
        elif args.command == "hecke":
            _print_series(hecke_T(args.level, args.n, args.m, args.terms), args.json)
        elif args.command == "classnumber":
            h = class_number_H(args.disc)
            print(f"H({args.disc}) = {h}")
        elif args.command == "forms":
            cl = classes_level(args.disc, args.level)
            rows = [
                {
                    "form": [rep.form.a, rep.form.b, rep.form.c],
                    "weight": str(rep.weight),
                    "root": rep.root(),
                }
                for rep in cl.classes
            ]
            if args.json:
                print(json.dumps({
                    "disc": args.disc, "level": args.level,
                    "heegner": is_heegner(args.disc, args.level), "classes": rows,
                }))
            else:
                print(f"discriminant -{args.disc}, level {args.level}, "
                      f"Heegner condition: {is_heegner(args.disc, args.level)}")
                for row in rows:
                    a, b, d = row["root"]
                    print(f"  {row['form']}  weight {row['weight']}  "
                          f"root (-{b} + sqrt(-{d})) / {2 * a}")
        elif args.command == "fd":
            f = build_fd(args.level, args.disc, args.terms)
            _print_series(f.series, args.json)
        elif args.command == "gd":
            g = build_gD(args.level, args.disc, args.terms)
            _print_series(g.series, args.json)
        elif args.command == "trace":
            val = trace_J(args.level, args.m, args.disc)
            print(f"J_{args.m}({args.disc}) = {val} at level {args.level}")
        elif args.command == "product":
            cert = verify_theorem(args.level, args.disc, terms=args.terms,
                                  with_cm=args.with_cm, cm_bits=args.bits)
            if args.json:
                print(json.dumps(cert.to_json()))
            else:
                print(f"level {cert.level}, disc {cert.disc}, delta {cert.delta}: {cert.status}")
                _print_series(cert.product_side, False)
            return 0 if cert.status == "match" else 1
        elif args.command == "recursion":
            if args.from_c:
                c = [int(x) for x in args.from_c.split(",")]
                a = recursion_A_from_c(args.level, args.disc, c)
                out = {"a_star": [str(x) for x in a]}
            else:
                c = recursion_c_from_A(args.level, args.disc, args.upto)
                a = recursion_A_from_c(args.level, args.disc, [int(x) for x in c])
                out = {"c": [str(x) for x in c], "a_star": [str(x) for x in a]}
            print(json.dumps(out) if args.json else out)
        elif args.command == "cm-eval":
            import mpmath as mp

            from .cm import cm_product_side, singular_moduli

            vals = singular_moduli(args.level, args.disc, args.bits)
            series, residual, used = cm_product_side(args.level, args.disc,
                                                     args.terms, args.bits)
            if args.json:
                print(json.dumps({
                    "points": [
                        {"a": pt.a, "b": pt.b, "d": pt.d, "weight": str(w),
                         "value": mp.nstr(v, 30)}
                        for pt, w, v in vals
                    ],
                    "residual": residual, "bits": used,
                    "series": series.to_json(),
                }))
            else:
                for pt, w, v in vals:
                    print(f"alpha = (-{pt.b}+sqrt(-{pt.d}))/{2*pt.a}  weight {w}  "
                          f"t(alpha) = {mp.nstr(v, 25)}")
                print(f"rounded product series (residual {residual:.2e} at {used} bits):")
                _print_series(series, False)
        elif args.command == "verify":
            return _cmd_verify(args)
    except UnsupportedLevel as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FrickeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
