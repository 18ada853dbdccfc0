"""Command-line entry point: ``grzcert {expand,roots,certify}``.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for usage
or resource errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import certify, limits
from .errors import GRZError, ResourceLimitError
from .grz import BlockId, lemma3_certify
from .report import ReportDocument, dumps, to_csv

log = logging.getLogger("grzcert")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _alpha_set(text: str) -> list[Fraction]:
    return [_rational(part) for part in text.split(",") if part]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized parameter draws")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for independent checks")
    common.add_argument("--force", action="store_true", help="ignore resource caps")
    common.add_argument("--max-monomials", type=int, default=None,
                        help=f"cap on stored monomials (default {limits.DEFAULT_MAX_MONOMIALS}, "
                             f"env {limits.MONOMIAL_ENV})")
    common.add_argument("--max-partitions", type=int, default=limits.DEFAULT_MAX_PARTITIONS)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="grzcert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="truncated expansion of the GRZ function")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--degree", type=int, default=None, help="total degree D (default min(16, 4r))")

    p = sub.add_parser("roots", parents=[common], help="isolate the real roots of h(s)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--l", type=int, default=None, help="single l (default: all 0..r-1)")
    p.add_argument("--n-max", type=int, default=None, help="grid over 1..n-max instead of a single n")

    p = sub.add_parser("certify", parents=[common], help="run check suites")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--suite", choices=certify.SUITES + ("all",), default="all")
    p.add_argument("--degree", type=int, default=None, help="expansion degree for the expand suite")
    p.add_argument("--n-max", type=int, default=certify.DEFAULT_N_MAX)
    p.add_argument("--dmax", type=int, default=None, help="largest block degree for the theorem suite")
    p.add_argument("--kl-max", type=int, default=certify.DEFAULT_KL_MAX)
    p.add_argument("--b", type=_rational, action="append", default=None, help="lemma2 b value (repeatable)")
    p.add_argument("--order", type=int, default=certify.DEFAULT_ORDER, help="lemma2 series order")
    p.add_argument("--alphas", type=_alpha_set, action="append", default=None,
                   help="comma-separated lemma5 alphas, e.g. 1/2,3 (repeatable)")
    return parser


def _echo(args: argparse.Namespace) -> dict:
    """Normalized command echo; output location and parallelism never enter the report."""
    skip = {"out", "format", "jobs", "verbose"}
    opts = {}
    for key, val in sorted(vars(args).items()):
        if key in skip or key == "command":
            continue
        if isinstance(val, list):
            val = [list(v) if isinstance(v, list) else v for v in val]
        opts[key] = val
    return {"subcommand": args.command, "options": opts}


def _run(args: argparse.Namespace) -> list:
    if args.r < 2:
        raise GRZError(f"--r must be >= 2, got {args.r}")
    caps = {"max_monomials": args.max_monomials, "max_partitions": args.max_partitions, "force": args.force}
    if args.command == "expand":
        degree = certify.default_degree(args.r) if args.degree is None else args.degree
        return [certify.run_desk_grz(args.r, degree, max_monomials=args.max_monomials, force=args.force)]
    if args.command == "roots":
        if args.n_max is not None:
            ls = None if args.l is None else [args.l]
            return [certify.run_lemma3_grid(args.r, args.n_max, ls=ls, jobs=args.jobs)]
        if args.n is None:
            raise GRZError("roots needs --n or --n-max")
        ls = range(args.r) if args.l is None else [args.l]
        reports = [lemma3_certify(BlockId(args.r, args.n, l)) for l in ls]
        grid = {"r": args.r, "n_min": args.n, "n_max": args.n, "l": list(ls)}
        return [certify.RunManifest("lemma3", grid, certify._caps(), reports)]
    kw = dict(degree=args.degree, n_max=args.n_max, d_max=args.dmax, kl_max=args.kl_max, bs=args.b,
              order=args.order, alpha_sets=args.alphas, seed=args.seed, jobs=args.jobs, **caps)
    if args.suite == "all":
        return certify.run_all(args.r, **kw)
    return [certify.run_suite(args.suite, args.r, **kw)]


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        manifests = _run(args)
    except ResourceLimitError as exc:
        print(f"grzcert: resource error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GRZError as exc:
        print(f"grzcert: {exc}", file=sys.stderr)
        return EXIT_USAGE

    doc = ReportDocument(_echo(args), manifests)
    text = to_csv(doc) if args.format == "csv" else dumps(doc)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    for m in manifests:
        log.info("%s: %s (%d checks, %d violations)", m.suite, m.status, len(m.reports), m.violations)
    return EXIT_PASS if doc.status == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
