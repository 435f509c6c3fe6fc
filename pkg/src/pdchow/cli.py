"""Command-line entry point: ``pdchow --suite NAME`` or ``pdchow --eval EXPR``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .expr import ExprError, eval_expression
from .pd_algebra import PDElement
from .report import dumps, render_text, toolchain
from .suites import SUITES, Options, SuiteError, run_suite


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pdchow",
        description="Exact checks of divided powers, tautological rings and the integral Fourier transform.",
    )
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--suite", choices=list(SUITES) + ["all"], help="verification suite to run")
    mode.add_argument("--eval", dest="expr", metavar="EXPR", help="evaluate an expression in T(g)")
    p.add_argument("--genus", type=int, default=1, help="genus (first genus of the range)")
    p.add_argument("--genus-max", type=int, default=None, help="last genus of the range (inclusive)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--samples", type=int, default=20, help="random samples per property")
    p.add_argument("--nmax", type=int, default=64, help="largest n for the torsion suite")
    p.add_argument("--coeff-mod", type=int, default=None, help="work over Z/m (pd-axioms, taut-ring, --eval)")
    p.add_argument("--pd-rank", type=int, default=None, help="evaluate EXPR in the free PD algebra of this rank")
    p.add_argument("--truncation", type=int, default=8, help="weight truncation for E(...) in PD mode")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="record elapsed milliseconds (breaks byte stability)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="human-readable output")
    p.set_defaults(fmt="json")
    return p


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _eval(args) -> int:
    try:
        value = eval_expression(args.expr, args.genus, args.coeff_mod, args.pd_rank, args.truncation)
    except ExprError as e:
        print(f"pdchow: {e}", file=sys.stderr)
        return 2
    if args.fmt == "text":
        _emit(repr(value) + "\n", args.out)
        return 0
    if isinstance(value, PDElement):
        payload = {
            "rank": value.algebra.rank,
            "modulus": value.algebra.modulus,
            "terms": [[list(m), str(c)] for m, c in sorted(value.coeffs.items())],
        }
    else:
        payload = value.to_json()
    payload = {"expression": args.expr, "value": payload, "toolchain": toolchain()}
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.coeff_mod is not None and args.coeff_mod < 2:
        print("pdchow: --coeff-mod must be >= 2", file=sys.stderr)
        return 2
    if args.expr is not None:
        return _eval(args)
    last = args.genus if args.genus_max is None else args.genus_max
    if last < args.genus:
        print("pdchow: --genus-max is smaller than --genus", file=sys.stderr)
        return 2
    opt = Options(seed=args.seed, samples=args.samples, nmax=args.nmax, coeff_mod=args.coeff_mod, timing=args.timing)
    try:
        reports = run_suite(args.suite, list(range(args.genus, last + 1)), opt)
    except SuiteError as e:
        print(f"pdchow: {e}", file=sys.stderr)
        return 2
    _emit(dumps(reports) if args.fmt == "json" else render_text(reports), args.out)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
