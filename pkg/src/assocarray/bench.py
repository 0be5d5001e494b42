"""Benchmark harness: scaled random inputs, five timed runs, median flop rates.

Each (operation, scale) cell generates a deterministic pair of input arrays
of 2**scale triples, times five runs of the operation on identical inputs
with a monotonic clock, and reports the median together with an accounted
flop count: 2 per contributing multiply-add pair for the product variants,
1 per union cell for add. The rate is flops divided by the median seconds.
"""

from __future__ import annotations

import csv
import math
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import algebra
from .assoc import Assoc
from .io import _text_sink
from .keys import Key, sorted_intersect

OPERATIONS: dict[str, Callable[[Assoc, Assoc], Assoc]] = {
    "multiply": algebra.multiply,
    "catKeyMul": algebra.cat_key_mul,
    "catValMul": algebra.cat_val_mul,
    "add": algebra.add,
}

RUNS_PER_CELL = 5
VALUE_MODES = ("numeric", "text")
_TEXT_VALUE_CHARS = "abcdefghijklmnopqrstuvwxyz"

CSV_COLUMNS = (
    "operation",
    "scale",
    "run1",
    "run2",
    "run3",
    "run4",
    "run5",
    "median_sec",
    "flops",
    "mflops",
)


@dataclass(frozen=True)
class GenSpec:
    """Deterministic recipe for one scaled random input array.

    2**scale triples are drawn i.i.d.: row and column keys are fixed-length
    text keys over ``key_charset`` (default length scale-3 over a two-letter
    alphabet, sizing the key space to about 2**scale / 8 distinct keys), and
    values are positive integers as floats or four-letter strings depending
    on ``value_mode``. The seed fully determines the output.
    """

    scale: int
    seed: int = 0
    value_mode: str = "numeric"
    key_length: int | None = None
    key_charset: str = "ab"

    def __post_init__(self) -> None:
        if self.scale < 1:
            raise ValueError("scale must be >= 1")
        if self.value_mode not in VALUE_MODES:
            raise ValueError(f"value_mode must be one of {VALUE_MODES}")
        if self.key_length is not None and self.key_length < 1:
            raise ValueError("key_length must be >= 1")
        if not self.key_charset:
            raise ValueError("key_charset must be non-empty")


def generate_triples(spec: GenSpec) -> tuple[list[str], list[str], list[Key]]:
    """The 2**scale pseudo-random triples described by ``spec``."""
    rng = random.Random(spec.seed)
    count = 1 << spec.scale
    length = spec.key_length if spec.key_length is not None else max(1, spec.scale - 3)
    chars = spec.key_charset

    def draw_key() -> str:
        return "".join(rng.choice(chars) for _ in range(length))

    row_keys = [draw_key() for _ in range(count)]
    col_keys = [draw_key() for _ in range(count)]
    if spec.value_mode == "numeric":
        values: list[Key] = [float(rng.randint(1, 1 << 20)) for _ in range(count)]
    else:
        values = [
            "".join(rng.choice(_TEXT_VALUE_CHARS) for _ in range(4))
            for _ in range(count)
        ]
    return row_keys, col_keys, values


def generate_scaled_assoc(spec: GenSpec) -> Assoc:
    """Deterministic pseudo-random Assoc with 2**scale generated triples."""
    return Assoc.from_triples(*generate_triples(spec))


def flop_count(operation: str, a: Assoc, b: Assoc) -> int:
    """Accounted floating-point operations for one run of ``operation``.

    The product variants count 2 per contributing (i, k, j) pair, summed over
    the intersected inner keys; add counts one per cell of the union pattern.
    """
    if operation in ("multiply", "catKeyMul", "catValMul"):
        _, pos_a, pos_b = sorted_intersect(a.cols, b.rows)
        a_col_nnz = Counter(j for _, j, _ in a.cells)
        b_row_nnz = Counter(i for i, _, _ in b.cells)
        return 2 * sum(a_col_nnz[pa] * b_row_nnz[pb] for pa, pb in zip(pos_a, pos_b))
    if operation == "add":
        coords = {(a.rows.at(i), a.cols.at(j)) for i, j, _ in a.cells}
        coords |= {(b.rows.at(i), b.cols.at(j)) for i, j, _ in b.cells}
        return len(coords)
    raise ValueError(f"unknown operation {operation!r}")


@dataclass(frozen=True)
class BenchRecord:
    """One (operation, scale) measurement: five timed runs on fixed inputs.

    ``median_sec`` is the middle order statistic of the five run times.
    ``warmup_first_run`` marks the first scale of an operation's sweep, whose
    first run pays any one-time setup cost. Errored cells carry an ``error``
    message and no timings.
    """

    operation: str
    scale: int
    run_times_sec: tuple[float, ...]
    median_sec: float
    flop_count: int
    flops_rate: float
    warmup_first_run: bool = False
    error: str | None = None


def median_of_five(times: Sequence[float]) -> float:
    """Exact middle order statistic of exactly five durations."""
    if len(times) != RUNS_PER_CELL:
        raise ValueError(f"expected {RUNS_PER_CELL} run times, got {len(times)}")
    return sorted(times)[2]


def _child_seed(seed: int, *parts) -> int:
    # Stable per-cell derivation so every cell is reproducible in isolation.
    text = "|".join([str(seed)] + [str(p) for p in parts])
    return random.Random(text).getrandbits(64)


def input_specs(operation: str, scale: int, seed: int, value_mode: str) -> tuple[GenSpec, GenSpec]:
    """The two generator specs feeding one benchmark cell."""
    return (
        GenSpec(scale, seed=_child_seed(seed, operation, scale, "a"), value_mode=value_mode),
        GenSpec(scale, seed=_child_seed(seed, operation, scale, "b"), value_mode=value_mode),
    )


def run_cell(
    operation: str,
    scale: int,
    seed: int,
    value_mode: str = "numeric",
    warmup_first_run: bool = False,
) -> BenchRecord:
    """Measure one (operation, scale) cell; failures become an errored record."""
    try:
        spec_a, spec_b = input_specs(operation, scale, seed, value_mode)
        a = generate_scaled_assoc(spec_a)
        b = generate_scaled_assoc(spec_b)
        op = OPERATIONS[operation]
        flops = flop_count(operation, a, b)
        times = []
        for _ in range(RUNS_PER_CELL):
            start = time.perf_counter()
            op(a, b)
            times.append(time.perf_counter() - start)
        median = median_of_five(times)
        return BenchRecord(
            operation=operation,
            scale=scale,
            run_times_sec=tuple(times),
            median_sec=median,
            flop_count=flops,
            flops_rate=flops / median,
            warmup_first_run=warmup_first_run,
        )
    except Exception as exc:  # isolate the cell; the sweep must continue
        return BenchRecord(
            operation=operation,
            scale=scale,
            run_times_sec=(),
            median_sec=math.nan,
            flop_count=0,
            flops_rate=math.nan,
            warmup_first_run=warmup_first_run,
            error=f"{type(exc).__name__}: {exc}",
        )


def _run_cell_args(args: tuple) -> BenchRecord:
    return run_cell(*args)


def run_benchmark(
    operations: Iterable[str],
    scales: Iterable[int],
    seed: int = 0,
    value_mode: str = "numeric",
    parallel_cells: bool = False,
    on_record: Callable[[BenchRecord], None] | None = None,
) -> list[BenchRecord]:
    """Run the measurement protocol over every (operation, scale) cell.

    Scales must be ascending. Execution is single-threaded unless
    ``parallel_cells`` spreads independent cells across processes; the five
    runs of a cell always happen sequentially on identical inputs.
    """
    ops = list(operations)
    for name in ops:
        if name not in OPERATIONS:
            raise ValueError(f"unknown operation {name!r}")
    scale_list = list(scales)
    if any(s2 <= s1 for s1, s2 in zip(scale_list, scale_list[1:])):
        raise ValueError("scales must be strictly ascending")
    cells = [
        (op, scale, seed, value_mode, idx == 0)
        for op in ops
        for idx, scale in enumerate(scale_list)
    ]
    if parallel_cells:
        with ProcessPoolExecutor() as pool:
            records = list(pool.map(_run_cell_args, cells))
        if on_record is not None:
            for record in records:
                on_record(record)
        return records
    records = []
    for args in cells:
        record = run_cell(*args)
        records.append(record)
        if on_record is not None:
            on_record(record)
    return records


def emit_results(records: Iterable[BenchRecord], sink) -> None:
    """Write measured records as CSV.

    Columns: operation, scale, run1..run5, median_sec, flops, mflops, with
    mflops to six significant digits. Errored records carry no measurements
    and are skipped.
    """
    with _text_sink(sink) as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for record in records:
            if record.error is not None:
                continue
            writer.writerow(
                [
                    record.operation,
                    record.scale,
                    *[repr(t) for t in record.run_times_sec],
                    repr(record.median_sec),
                    record.flop_count,
                    f"{record.flops_rate / 1e6:.6g}",
                ]
            )
