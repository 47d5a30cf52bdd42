"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 usage error,
3 brute-force budget exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import math
import os
import sys
from typing import List, Optional

from . import family_moments as fm
from . import legendre_sums, modarith, rank_bounds, sharpness

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
SHARPNESS_CAP = 10**6
NAGAO_BRUTE_CAP = 10**5


class UsageError(Exception):
    pass


@contextlib.contextmanager
def _output(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _resolve_family(name: str):
    """Catalog id (str) or FamilySpec loaded from a JSON file."""
    if name in fm.CATALOG:
        return name
    if os.path.exists(name):
        return fm.load_family(name)
    raise UsageError(f"unknown family {name!r} (not in catalog and no such file); "
                     f"catalog: {', '.join(sorted(fm.CATALOG))}")


def _budget_for(family) -> int:
    if isinstance(family, str) and fm.get_entry(family).two_parameter:
        return fm.TWO_PARAM_BUDGET
    return fm.ONE_PARAM_BUDGET


def cmd_moments(args) -> int:
    family = _resolve_family(args.family)
    if not 3 <= args.pmin <= args.pmax:
        raise UsageError("need 3 <= --pmin <= --pmax")
    cap = _budget_for(family)
    if args.pmax > cap:
        raise fm.BudgetError(f"--pmax {args.pmax} exceeds the brute-force budget {cap}")
    primes = fm.odd_primes(args.pmin, args.pmax)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("p", "A1", "A2"))
        for rec in fm.moment_sweep(family, primes, workers=args.workers):
            w.writerow((int(rec.p), rec.A1, rec.A2 if args.order == 2 else ""))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.family not in fm.CATALOG:
        raise UsageError(f"verify needs a catalog family; known: {', '.join(sorted(fm.CATALOG))}")
    entry = fm.get_entry(args.family)
    cap = fm.TWO_PARAM_BUDGET if entry.two_parameter else fm.ONE_PARAM_BUDGET
    if args.pmax > cap:
        raise fm.BudgetError(f"--pmax {args.pmax} exceeds the brute-force budget {cap}")
    if not 3 <= args.pmin <= args.pmax:
        raise UsageError("need 3 <= --pmin <= --pmax")
    mismatches = []
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("p", "brute", "closed", "match"))
        for p in fm.odd_primes(args.pmin, args.pmax):
            rep = fm.verify_family(args.family, p)
            w.writerow((int(rep.p), rep.brute, rep.closed, int(rep.match)))
            if not rep.match:
                mismatches.append(rep)
    for rep in mismatches:
        print(f"mismatch at p={int(rep.p)}: brute={rep.brute} closed={rep.closed}", file=sys.stderr)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_sharpness(args) -> int:
    if args.pmax > SHARPNESS_CAP:
        raise fm.BudgetError(f"--pmax {args.pmax} exceeds {SHARPNESS_CAP}")
    if args.pmax < 5:
        raise UsageError("--pmax must be at least 5")
    if not 0 < args.bin_width <= 4:
        raise UsageError("--bin-width must lie in (0, 4]")
    records = list(sharpness.fluctuation_sweep(5, args.pmax, workers=args.workers))
    if args.out:
        with _output(args.out) as fh:
            fh.write(sharpness.records_csv(records))
    report = sharpness.interval_hit_report(args.pmax, args.bin_width, records=records)
    sys.stdout.write(report.to_csv())
    return EXIT_OK


def cmd_rank_estimate(args) -> int:
    family = _resolve_family(args.family)
    cid = family if isinstance(family, str) else None
    if cid is None and args.x > NAGAO_BRUTE_CAP:
        raise fm.BudgetError(f"-X {args.x} exceeds {NAGAO_BRUTE_CAP} for non-cataloged families")
    if cid is not None and fm.get_entry(cid).two_parameter:
        raise UsageError("rank-estimate applies to one-parameter families")
    est = fm.nagao_rank_estimate(family, args.x, workers=args.workers)
    doc = {"family": args.family, "X": args.x, "estimate": est}
    if cid is not None:
        doc["expected_rank"] = fm.get_entry(cid).rank
    with _output(args.out) as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    return EXIT_OK


def cmd_rank_bound(args) -> int:
    if args.log_r is not None:
        log_r = args.log_r
    elif args.n is not None and args.a is not None:
        if args.n <= 1:
            raise UsageError("--n must exceed 1")
        log_r = args.a * math.log(args.n)
    else:
        raise UsageError("give --log-r, or both --n and --a")
    try:
        report = rank_bounds.average_rank_bound(args.r, args.sigma, log_r, args.m, args.constants)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    with _output(args.out) as fh:
        json.dump(report.to_dict(), fh, indent=2)
        fh.write("\n")
    return EXIT_OK


def cmd_legendre(args) -> int:
    kind = args.kind
    if kind == "symbol":
        val = modarith.legendre_symbol(args.values[0], args.p)
    elif kind == "shifted":
        val = legendre_sums.shifted_product_sum(*args.values, args.p)
    elif kind == "quadratic":
        val = legendre_sums.quadratic_char_sum(*args.values, args.p)
    else:
        val = legendre_sums.brute_char_sum(args.values, args.p)
    print(val)
    return EXIT_OK


_LEGENDRE_ARITY = {"symbol": 1, "shifted": 2, "quadratic": 3}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecmoments",
        description="Moments of a_t(p) over elliptic-curve families, and related bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def workers(sp):
        sp.add_argument("--workers", type=int, default=1, help="threads for per-prime work")

    sp = sub.add_parser("moments", help="CSV of p, A1, A2 over a range of primes")
    sp.add_argument("--family", required=True, help="catalog id or JSON family file")
    sp.add_argument("--pmin", type=int, default=3)
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--order", type=int, choices=(1, 2), default=2)
    sp.add_argument("--out")
    workers(sp)
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("verify", help="brute-force A2 against the cataloged closed form")
    sp.add_argument("--family", required=True)
    sp.add_argument("--pmin", type=int, default=5)
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sharpness", help="fluctuation records and histogram for y^2 = x^3 + T x^2 + 1")
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--bin-width", type=float, default=0.5)
    sp.add_argument("--out", help="file for per-prime records (histogram goes to stdout)")
    workers(sp)
    sp.set_defaults(func=cmd_sharpness)

    sp = sub.add_parser("rank-estimate", help="Nagao first-moment rank estimate")
    sp.add_argument("--family", required=True)
    sp.add_argument("-X", "--x", type=int, default=10**4)
    sp.add_argument("--out")
    workers(sp)
    sp.set_defaults(func=cmd_rank_estimate)

    sp = sub.add_parser("rank-bound", help="average-rank upper bound report")
    sp.add_argument("--r", type=int, default=0)
    sp.add_argument("--sigma", type=float, required=True)
    sp.add_argument("--log-r", type=float)
    sp.add_argument("--n", type=float, help="family height N; log R = a log N")
    sp.add_argument("--a", type=float)
    sp.add_argument("--m", type=float, default=1.0, help="m_E")
    sp.add_argument("--constants", choices=("paper", "computed"), default="paper")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_rank_bound)

    sp = sub.add_parser("legendre", help="Legendre symbols and character sums")
    sp.add_argument("kind", choices=("symbol", "shifted", "quadratic", "poly"))
    sp.add_argument("values", type=int, nargs="+",
                    help="symbol: A; shifted: N1 N2; quadratic: A B C; poly: ascending coefficients")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_legendre)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "legendre":
        arity = _LEGENDRE_ARITY.get(args.kind)
        if arity is not None and len(args.values) != arity:
            print(f"error: legendre {args.kind} takes {arity} value(s)", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except fm.BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, fm.FamilyFormatError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
