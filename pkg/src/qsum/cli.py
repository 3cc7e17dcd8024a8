"""Command-line front end: deterministic CSV / text output for every computation.

Subcommands:
    dist      outcome distribution for a mean k/2**n           -> CSV
    simulate  one gate-level run of the algorithm              -> text report
    error     one worst- or average-case error evaluation      -> CSV
    curve     sweep of error evaluations over M or p           -> CSV
    verify    named verification suite with a pass/fail table  -> exit code

Identical invocations (including the seed) produce byte-identical output.
Floats are printed with 17 significant digits and a '.' decimal point.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .boolfn import BooleanFunction, Measure
from .bounds import (
    EIGHT_OVER_PI_SQ,
    FOUR_OVER_PI_SQ,
    ErrorRecord,
    avg_probabilistic_error,
    worst_probabilistic_error,
)
from .closedform import distribution
from .simulator import run_qs
from .suites import SUITE_NAMES, run_suite

__all__ = ["main"]


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _parse_p(text: str) -> float:
    t = text.strip().lower()
    if t in ("8/pi2", "8/pi^2"):
        return EIGHT_OVER_PI_SQ
    if t in ("4/pi2", "4/pi^2"):
        return FOUR_OVER_PI_SQ
    return float(text)


def _parse_int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _parse_p_list(text: str) -> list[float]:
    return [_parse_p(part) for part in text.split(",") if part.strip()]


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _record_row(rec: ErrorRecord) -> str:
    measure = rec.measure.value if rec.measure is not None else ""
    bound = _fmt(rec.bound) if rec.bound is not None else ""
    ref = rec.bound_ref or ""
    return (
        f"{rec.M},{rec.N},{_fmt(rec.p)},{rec.setting.value},{measure},"
        f"{_fmt(rec.value)},{bound},{ref}"
    )


_ERROR_HEADER = "M,N,p,setting,measure,value,bound,bound_ref"


def _cmd_dist(args: argparse.Namespace) -> int:
    N = 1 << args.n
    if not 0 <= args.k <= N:
        raise ValueError(f"k must lie in [0, {N}], got {args.k}")
    dist = distribution(Fraction(args.k, N), args.m)
    lines = ["j,prob,abar"]
    for j in range(args.m):
        lines.append(f"{j},{_fmt(float(dist.probs[j]))},{_fmt(float(dist.outputs[j]))}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    f = BooleanFunction.from_hex(args.n, args.f)
    result = run_qs(f, args.m, rng_seed=args.seed)
    record = result.record  # always present: a seed is always supplied
    # outcome and output come from the gate-level run; the reported
    # probability is the exact closed-form value of that outcome
    dist = distribution(f.mean, args.m)
    exact_prob = float(dist.probs[record.outcome]) if record.outcome < args.m else 0.0
    lines = [
        f"outcome: {record.outcome}",
        f"output: {_fmt(result.output)}",
        f"probability: {_fmt(exact_prob)}",
        f"queries: {result.queries}",
        f"qubits: {result.qubits}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _evaluate(setting: str, M: int, N: int, p: float, measure: str, beta: float) -> ErrorRecord:
    if setting == "worst":
        return worst_probabilistic_error(M, N, p)
    return avg_probabilistic_error(M, N, p, Measure(measure), beta=beta)


def _cmd_error(args: argparse.Namespace) -> int:
    rec = _evaluate(args.setting, args.m, 1 << args.n, args.p, args.measure, args.beta)
    _emit(_ERROR_HEADER + "\n" + _record_row(rec) + "\n", args.out)
    return 0


def _cmd_curve(args: argparse.Namespace) -> int:
    if (args.m_values is None) == (args.p_values is None):
        raise ValueError("provide exactly one of --m-values or --p-values")
    if args.m_values is not None:
        if not args.m_values:
            raise ValueError("--m-values must name at least one M")
        if args.p is None:
            raise ValueError("--p is required when sweeping over --m-values")
        points = [(M, args.p) for M in args.m_values]
    else:
        if not args.p_values:
            raise ValueError("--p-values must name at least one p")
        if args.m is None:
            raise ValueError("--m is required when sweeping over --p-values")
        points = [(args.m, p) for p in args.p_values]
    lines = [_ERROR_HEADER]
    for M, p in points:
        rec = _evaluate(args.setting, M, 1 << args.n, p, args.measure, args.beta)
        lines.append(_record_row(rec))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(args.suite)
    width = max(len(f"{r.suite}: {r.name}") for r in results)
    lines = []
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        failed += not r.passed
        lines.append(f"{status}  {f'{r.suite}: {r.name}'.ljust(width)}  {r.detail}")
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    _emit("\n".join(lines) + "\n", args.out)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsum",
        description="Simulate the quantum summation algorithm and verify its error bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dist = sub.add_parser("dist", help="closed-form outcome distribution for mean k/2^n")
    p_dist.add_argument("--m", type=int, required=True, help="Fourier size M >= 1")
    p_dist.add_argument("--n", type=int, required=True, help="data qubits, N = 2^n")
    p_dist.add_argument("--k", type=int, required=True, help="number of ones, mean = k/N")
    p_dist.add_argument("--out", default=None, help="output file (default: stdout)")
    p_dist.set_defaults(func=_cmd_dist)

    p_sim = sub.add_parser("simulate", help="one gate-level run with a sampled outcome")
    p_sim.add_argument("--m", type=int, required=True)
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--f", required=True,
                       help="value table: hex (N >= 4) or bits (N < 4), point 0 first")
    p_sim.add_argument("--seed", type=int, default=0, help="64-bit sampling seed")
    p_sim.add_argument("--out", default=None)
    p_sim.set_defaults(func=_cmd_simulate)

    def add_error_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--setting", choices=["worst", "avg"], required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--measure", choices=["p1", "p2"], default="p1",
                       help="measure for the avg setting (default p1)")
        p.add_argument("--beta", type=float, default=2.0,
                       help="beta parameter of the non-divisible lower bound")
        p.add_argument("--out", default=None)

    p_err = sub.add_parser("error", help="one error evaluation with its applicable bound")
    add_error_args(p_err)
    p_err.add_argument("--m", type=int, required=True)
    p_err.add_argument("--p", type=_parse_p, required=True,
                       help="probability level; accepts 8/pi2 and 4/pi2")
    p_err.set_defaults(func=_cmd_error)

    p_curve = sub.add_parser("curve", help="error sweep over M or over p")
    add_error_args(p_curve)
    p_curve.add_argument("--m", type=int, default=None)
    p_curve.add_argument("--p", type=_parse_p, default=None)
    p_curve.add_argument("--m-values", type=_parse_int_list, default=None,
                         help="comma-separated M sweep, e.g. 4,8,16,32,64")
    p_curve.add_argument("--p-values", type=_parse_p_list, default=None,
                         help="comma-separated p sweep, e.g. 0.51,0.6,0.75,8/pi2")
    p_curve.set_defaults(func=_cmd_curve)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("--suite", choices=list(SUITE_NAMES) + ["all"], required=True)
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
