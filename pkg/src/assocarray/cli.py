"""Command-line entry point for the benchmark sweep."""

from __future__ import annotations

import argparse
import sys

from . import bench

_CANONICAL_OPS = {name.lower(): name for name in bench.OPERATIONS}


def parse_ops(text: str) -> list[str]:
    """Comma-separated operation names, case-insensitive."""
    ops = []
    for part in text.split(","):
        name = _CANONICAL_OPS.get(part.strip().lower())
        if name is None:
            valid = ", ".join(bench.OPERATIONS)
            raise argparse.ArgumentTypeError(f"unknown operation {part.strip()!r} (valid: {valid})")
        ops.append(name)
    return ops


def parse_scales(text: str) -> list[int]:
    """An inclusive 'lo..hi' range of scale exponents, or a single exponent."""
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"scales must look like '6..12', got {text!r}") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"need 1 <= lo <= hi, got {text!r}")
    return list(range(lo, hi + 1))


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="assoc-bench",
        description=(
            "Benchmark the associative-array operations on scaled random "
            "inputs: five timed runs per (operation, scale) cell, median "
            "timing, and accounted flop rates, written as CSV."
        ),
    )
    parser.add_argument(
        "--ops",
        type=parse_ops,
        default=list(bench.OPERATIONS),
        help="comma-separated subset of: %(default)s",
        metavar="LIST",
    )
    parser.add_argument(
        "--scales",
        type=parse_scales,
        default=parse_scales("6..12"),
        help="inclusive lo..hi range of input-size exponents (default 6..12)",
        metavar="LO..HI",
    )
    parser.add_argument("--seed", type=_seed, default=0, help="generator seed (default 0)")
    parser.add_argument(
        "--out",
        default=None,
        help="results CSV path (default: stdout)",
        metavar="PATH",
    )
    parser.add_argument(
        "--value-mode",
        choices=bench.VALUE_MODES,
        default="numeric",
        help="value population for generated inputs (default numeric)",
    )
    parser.add_argument(
        "--parallel-cells",
        action="store_true",
        help="run independent (operation, scale) cells in parallel processes",
    )
    return parser


def _report(record: bench.BenchRecord) -> None:
    if record.error is not None:
        print(
            f"{record.operation} 2^{record.scale}: ERROR {record.error}",
            file=sys.stderr,
        )
    else:
        print(
            f"{record.operation} 2^{record.scale}: median {record.median_sec:.6g}s, "
            f"{record.flops_rate / 1e6:.6g} MFlops",
            file=sys.stderr,
        )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    records = bench.run_benchmark(
        args.ops,
        args.scales,
        seed=args.seed,
        value_mode=args.value_mode,
        parallel_cells=args.parallel_cells,
        on_record=_report,
    )
    bench.emit_results(records, args.out if args.out is not None else sys.stdout)
    return 1 if any(r.error is not None for r in records) else 0


if __name__ == "__main__":
    sys.exit(main())
