"""Command-line entry point.

Exit codes: 0 success, 1 invalid input or unwritable output, 2 numeric
failure, 3 a bound or verification suite failed.
"""

from __future__ import annotations

import argparse
import os
import sys

from .chsh import chsh_max
from .errors import NumericError, ValidationError
from .scan import ScanSpec, format_number, write_scan
from .search import SearchConfig, maximize_monogamy, maximize_saturation
from .stateio import load_quantum_state
from .tradeoff import reduced_pair, tradeoff_report
from .verify import run_verify

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERIC = 2
EXIT_FAILED = 3
SEED_ENV = "BELLSCOPE_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def resolve_seed(flag: int | None) -> int:
    """Flag beats the environment variable, which beats the default 0."""
    if flag is not None:
        return flag
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw.strip(), 10)
    except ValueError as exc:
        raise ValidationError(f"{SEED_ENV}={raw!r} is not a decimal integer") from exc


def _pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"pair must look like 'i,j', got {text!r}") from exc
    return i, j


def _fmt(x: float) -> str:
    return format_number(x)


def cmd_chsh(args) -> int:
    state = load_quantum_state(args.state)
    i, j = args.pair
    if i == j or not (0 <= i < state.n and 0 <= j < state.n):
        raise ValidationError(f"pair ({i}, {j}) invalid for a {state.n}-qubit state")
    result = chsh_max(reduced_pair(state, i, j))
    print(f"value {_fmt(result.value)}")
    print(f"tau1 {_fmt(result.tau1)}")
    print(f"tau2 {_fmt(result.tau2)}")
    print(f"tau_min {_fmt(result.tau_min)}")
    return EXIT_OK


def cmd_tradeoff(args) -> int:
    state = load_quantum_state(args.state)
    report = tradeoff_report(state)
    print("pair\tvalue\tsquared")
    for p in report.pairs:
        print(f"{p.pair[0]},{p.pair[1]}\t{_fmt(p.value)}\t{_fmt(p.squared)}")
    print(f"squared_sum {_fmt(report.squared_sum)}")
    print(f"bound {_fmt(report.bound)}")
    print(f"violating_pairs {report.violating_pairs}")
    print("satisfied" if report.satisfied else "VIOLATED")
    return EXIT_OK if report.satisfied else EXIT_FAILED


def cmd_scan(args) -> int:
    spec = ScanSpec(args.figure, args.res, args.out)
    try:
        write_scan(spec)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_optimize(args) -> int:
    config = SearchConfig(
        objective=args.objective,
        shared=args.shared,
        starts=args.starts,
        seed=resolve_seed(args.seed),
        workers=args.workers,
    )
    result = maximize_saturation(config) if args.objective == "saturation" else maximize_monogamy(config)
    lam = " ".join(_fmt(x) for x in result.best_params.lam)
    print(f"objective {args.objective}" + (f" shared {args.shared}" if args.objective == "monogamy" else ""))
    print(f"best_params lambda {lam} psi {_fmt(result.best_params.psi)}")
    print(f"best_value {_fmt(result.best_value)}")
    print(f"best_start {result.best_start} of {len(result.trace)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verify(samples=args.samples, seed=resolve_seed(args.seed))
    for suite in report.suites:
        print(suite.summary())
    print("all suites passed" if report.passed else "verification FAILED")
    return EXIT_OK if report.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bellscope", description="Pairwise CHSH violations of multi-qubit states.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("chsh", help="maximal CHSH value of one two-qubit reduction")
    p.add_argument("--state", required=True, help="state file (JSON)")
    p.add_argument("--pair", type=_pair, default=(0, 1), help="qubit pair i,j (default 0,1)")
    p.set_defaults(func=cmd_chsh)

    p = sub.add_parser("tradeoff", help="all pairwise values against the 2n(n-1) bound")
    p.add_argument("--state", required=True)
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("scan", help="write figure data as CSV")
    p.add_argument("figure", choices=["fig1", "fig2"])
    p.add_argument("--res", type=int, default=None, help="samples per axis")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("optimize", help="multi-start search over Schmidt parameters")
    p.add_argument("objective", choices=["saturation", "monogamy"])
    p.add_argument("--shared", type=int, default=2, help="qubit shared by both pairs (monogamy)")
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="seeded Monte Carlo checks of the trade-off relations")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
