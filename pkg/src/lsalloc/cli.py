"""Command-line benchmark harness.

Subcommands: thresholds, sweep-n, sweep-c, capacity, match, verify.
Rows go to --out as CSV (12 fixed columns) or to stdout.  Exit codes:
0 success, 1 verification failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .bench import (
    ExperimentConfig,
    run_capacity,
    run_match,
    run_sweep_c,
    run_sweep_n,
    run_verify,
)
from .results import CSV_COLUMNS, write_csv
from .thresholds import solve_threshold


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok]


def _cap_list(text: str) -> list[int]:
    # the token 'n' means "use right_count", resolved after the graph loads
    return [0 if tok == "n" else int(tok) for tok in text.split(",") if tok]


def _m_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


def _emit(rows, out: str | None) -> None:
    if out:
        write_csv(rows, out)
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(CSV_COLUMNS)
        for rec in rows:
            writer.writerow(rec.as_row())


def _config(args: argparse.Namespace) -> ExperimentConfig:
    algos = ["lsa", "rw"] if args.algo == "both" else [args.algo]
    return ExperimentConfig(
        ns=args.n,
        k=args.k,
        cs=args.c or [],
        m=args.m,
        m_range=getattr(args, "m_range", None),
        s=args.s,
        seeds=args.seeds,
        seed_base=args.seed_base,
        caps=getattr(args, "caps", []) or [],
        algos=algos,
        max_moves=args.max_moves,
        one_based=getattr(args, "one_based", False),
        distinct=args.distinct_choices,
        trace=args.trace,
        jobs=args.jobs,
        allow_above_threshold=getattr(args, "allow_above_threshold", False),
    )


def _add_common(sub: argparse.ArgumentParser, default_n: list[int]) -> None:
    sub.add_argument("--n", type=_int_list, default=default_n, help="comma-separated location counts")
    sub.add_argument("--k", type=int, default=3, help="choices per item")
    sub.add_argument("--c", type=_float_list, default=None, help="comma-separated densities (m = floor(c*n))")
    sub.add_argument("--m", type=int, default=None, help="explicit item count")
    sub.add_argument("--s", type=int, default=1, help="location capacity")
    sub.add_argument("--seeds", type=int, default=3, help="number of repetitions")
    sub.add_argument("--seed-base", type=int, default=0, help="seed of repetition 0 (repetition i uses base+i)")
    sub.add_argument("--algo", choices=["lsa", "rw", "both"], default="both")
    sub.add_argument("--max-moves", type=int, default=None, help="random-walk move cap per insertion (default n)")
    sub.add_argument("--out", default=None, help="CSV output path (default stdout)")
    sub.add_argument("--jobs", type=int, default=1, help="worker processes")
    sub.add_argument("--distinct-choices", action="store_true", help="draw k distinct locations per item")
    sub.add_argument("--trace", action="store_true", help="reference engine with eviction chains on stderr")


def _cmd_thresholds(args: argparse.Namespace) -> int:
    for k in args.k:
        res = solve_threshold(k, args.tol)
        print(f"k={res.k} xi_star={res.xi_star:.12g} c_star={res.c_star:.12g}")
    return 0


def _cmd_sweep_n(args: argparse.Namespace) -> int:
    config = _config(args)
    if not config.cs:
        config.cs = [0.9]
    _emit(run_sweep_n(config), args.out)
    return 0


def _cmd_sweep_c(args: argparse.Namespace) -> int:
    config = _config(args)
    _emit(run_sweep_c(config), args.out)
    return 0


def _cmd_capacity(args: argparse.Namespace) -> int:
    config = _config(args)
    config.algos = ["lsa"]
    _emit(run_capacity(config), args.out)
    return 0


def _cmd_match(args: argparse.Namespace) -> int:
    config = _config(args)
    _emit(run_match(config, args.edge_list), args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    config = _config(args)
    report = run_verify(config)
    for line in report.summary_lines():
        print(line)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lsalloc", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("thresholds", help="print load thresholds c* per k")
    sub.add_argument("--k", type=_int_list, default=[3, 4, 5], help="comma-separated k values")
    sub.add_argument("--tol", type=float, default=1e-12)
    sub.set_defaults(func=_cmd_thresholds)

    sub = subs.add_parser("sweep-n", help="total/max moves vs n for both engines")
    _add_common(sub, default_n=[10_000, 20_000, 40_000])
    sub.set_defaults(func=_cmd_sweep_n)

    sub = subs.add_parser("sweep-c", help="moves vs density at fixed n")
    _add_common(sub, default_n=[100_000])
    sub.add_argument("--allow-above-threshold", action="store_true",
                     help="permit densities >= c* (small n only)")
    sub.set_defaults(func=_cmd_sweep_c)

    sub = subs.add_parser("capacity", help="capacity-s insertion sweep")
    _add_common(sub, default_n=[10_000])
    sub.set_defaults(func=_cmd_capacity)

    sub = subs.add_parser("match", help="move-capped matcher vs Hopcroft-Karp on an edge list")
    _add_common(sub, default_n=[0])
    sub.add_argument("--edge-list", required=True, help="edge-list file (see README for format)")
    sub.add_argument("--caps", type=_cap_list, default=[1, 2, 4, 5, 10, 50, 100, 1000, 0],
                     help="comma-separated move caps; 'n' means right_count")
    sub.add_argument("--one-based", action="store_true", help="edge-list indices start at 1")
    sub.set_defaults(func=_cmd_match)

    sub = subs.add_parser("verify", help="invariant suite on the reference engine")
    _add_common(sub, default_n=[200])
    sub.add_argument("--m-range", type=_m_range, default=None, metavar="LO:HI",
                     help="sweep m cyclically over [LO, HI] across repetitions")
    sub.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
