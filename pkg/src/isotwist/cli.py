"""Command line: ``isotwist check --suite algebra|hopf|calculus|spectral|all [files]``.

Exit status 0 when every check passes, 1 when a check fails or errors, 2 on
usage, input or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .parsing import ParseError
from .report import emit_report
from .suites import SUITES, SuiteInputs, SuiteOptions, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isotwist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="run a check suite")
    check.add_argument("--suite", choices=SUITES, required=True)
    check.add_argument("files", nargs="*", help=".alg presentation and .sym symmetry files")
    check.add_argument("--max-degree", type=_positive, default=5)
    check.add_argument("--trials", type=_positive, default=200)
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--cutoff", type=_positive, default=8)
    check.add_argument("--theta", type=_fraction, default=Fraction(1, 5))
    check.add_argument("--format", choices=("human", "json"), default="human")
    check.add_argument("--timing", action="store_true", help="record wall time (breaks byte-identity)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = SuiteOptions(max_degree=args.max_degree, trials=args.trials, seed=args.seed,
                        cutoff=args.cutoff, theta=args.theta)
    try:
        inputs = SuiteInputs.from_paths(args.files) if args.files else None
        report = run_suite(args.suite, inputs, opts, timing=args.timing)
    except (ParseError, OSError, ValueError) as e:
        print(f"isotwist: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.buffer.write(emit_report(report, args.format))
    sys.stdout.flush()
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
