"""Delimited-file persistence and the dense-table bridge.

Files are UTF-8 CSV or TSV with RFC-4180-style quoting. The first record is
the header; its first field names the row-label column and is otherwise
ignored, and the first column of every body record is the row label. A field
that reads as a plain finite decimal number becomes a number key, everything
else a text key; empty fields and literal zeros are absent cells.
"""

from __future__ import annotations

import csv
import io
import math
import os
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator

from .assoc import Assoc
from .keys import Key, as_key, key_text

ROW_LABEL_PLACEHOLDER = "x"


class FormatError(ValueError):
    """Malformed delimited input; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def parse_field(text: str) -> Key:
    """Key for one delimited field.

    A number key when the whole field is a finite decimal with no surrounding
    whitespace and no underscores; a text key otherwise.
    """
    if not text or text != text.strip() or "_" in text:
        return text
    try:
        number = float(text)
    except ValueError:
        return text
    return number if math.isfinite(number) else text


def _check_delimiter(delimiter: str) -> None:
    if delimiter not in (",", "\t"):
        raise ValueError(f"delimiter must be ',' or tab, got {delimiter!r}")


@contextmanager
def _text_source(source) -> Iterator:
    """Text stream over a path, text stream, or binary stream (consumed)."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8", newline="") as stream:
            yield stream
        return
    if not hasattr(source, "read"):
        raise TypeError(f"cannot read from {type(source).__name__}")
    if isinstance(source.read(0), str):
        yield source
        return
    wrapper = io.TextIOWrapper(source, encoding="utf-8", newline="")
    try:
        yield wrapper
    finally:
        wrapper.detach()


@contextmanager
def _text_sink(sink) -> Iterator:
    """Writable text stream over a path, text stream, or binary stream."""
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="") as stream:
            yield stream
        return
    if not hasattr(sink, "write"):
        raise TypeError(f"cannot write to {type(sink).__name__}")
    try:
        sink.write("")
    except TypeError:
        wrapper = io.TextIOWrapper(sink, encoding="utf-8", newline="")
        try:
            yield wrapper
        finally:
            wrapper.flush()
            wrapper.detach()
    else:
        yield sink


def read_delimited(source, delimiter: str = ",") -> Assoc:
    """Parse a delimited table into a condensed Assoc.

    Every non-empty body cell yields one (row label, column key, value)
    triple; duplicate (row, col) pairs merge under the default collision
    policy, so repeated row labels are legal. A record with the wrong field
    count raises :class:`FormatError` with its line number.
    """
    _check_delimiter(delimiter)
    row_keys: list[Key] = []
    col_keys: list[Key] = []
    values: list[Key] = []
    with _text_source(source) as stream:
        reader = csv.reader(stream, delimiter=delimiter)
        header = next(reader, None)
        if header is None:
            raise FormatError("missing header record", line=1)
        width = len(header)
        header_keys = [parse_field(h) for h in header[1:]]
        for record in reader:
            if len(record) != width:
                raise FormatError(
                    f"expected {width} fields, got {len(record)}",
                    line=reader.line_num,
                )
            label = parse_field(record[0])
            for col_key, text in zip(header_keys, record[1:]):
                if text == "":
                    continue
                value = parse_field(text)
                if isinstance(value, float) and value == 0.0:
                    continue  # literal zero is the sparse annihilator
                row_keys.append(label)
                col_keys.append(col_key)
                values.append(value)
    return Assoc.from_triples(row_keys, col_keys, values)


def write_delimited(a: Assoc, sink, delimiter: str = ",") -> None:
    """Write an Assoc as a delimited table; inverse of :func:`read_delimited`.

    The header is the row-label placeholder followed by the column keys in
    sorted order, then one body row per row key. Empty cells stay empty and
    numbers render in shortest round-trip form.
    """
    _check_delimiter(delimiter)
    rendered: dict[tuple[int, int], str] = {}
    for i, j, payload in a.cells:
        value = payload if a.vals is None else a.vals.at(payload)
        rendered[(i, j)] = key_text(value)
    ncols = len(a.cols)
    with _text_sink(sink) as stream:
        writer = csv.writer(stream, delimiter=delimiter, lineterminator="\n")
        writer.writerow([ROW_LABEL_PLACEHOLDER] + [key_text(k) for k in a.cols])
        for i, row_key in enumerate(a.rows, start=1):
            writer.writerow(
                [key_text(row_key)]
                + [rendered.get((i, j), "") for j in range(1, ncols + 1)]
            )


@dataclass(frozen=True)
class DenseTable:
    """Rectangular grid with named columns and optional row labels.

    ``None`` cells are absent. Grids built from numeric arrays use 0.0 in
    place of absences instead.
    """

    column_names: tuple[Key, ...]
    row_labels: tuple[Key, ...] | None
    cells: tuple[tuple[Key | None, ...], ...]

    def __post_init__(self) -> None:
        width = len(self.column_names)
        for row in self.cells:
            if len(row) != width:
                raise ValueError("grid must be rectangular")
        if self.row_labels is not None and len(self.row_labels) != len(self.cells):
            raise ValueError("row_labels must have one label per grid row")


def to_dense_table(a: Assoc) -> DenseTable:
    """Dense view of an Assoc.

    For a numeric store, absent cells render as 0.0; for a text-valued store
    they stay ``None``.
    """
    absent = 0.0 if a.vals is None else None
    grid = [[absent] * len(a.cols) for _ in range(len(a.rows))]
    for i, j, payload in a.cells:
        grid[i - 1][j - 1] = payload if a.vals is None else a.vals.at(payload)
    return DenseTable(
        column_names=tuple(a.cols.keys),
        row_labels=tuple(a.rows.keys),
        cells=tuple(tuple(row) for row in grid),
    )


def from_dense_table(table: DenseTable, row_label_policy: str = "use_labels") -> Assoc:
    """Assoc from a dense grid, skipping absent and exactly-zero cells.

    ``row_label_policy`` is ``"use_labels"`` (the table must carry labels) or
    ``"synthesize"`` (row keys become the number keys 1..rowCount).
    """
    if row_label_policy == "use_labels":
        if table.row_labels is None:
            raise ValueError("table has no row labels; use row_label_policy='synthesize'")
        labels = table.row_labels
    elif row_label_policy == "synthesize":
        labels = tuple(float(i) for i in range(1, len(table.cells) + 1))
    else:
        raise ValueError(f"unknown row label policy {row_label_policy!r}")

    triples: tuple[list[Key], list[Key], list[Key]] = ([], [], [])
    for label, row in zip(labels, table.cells):
        for name, raw in zip(table.column_names, row):
            if raw is None:
                continue
            value = as_key(raw)
            if isinstance(value, float) and value == 0.0:
                continue
            triples[0].append(label)
            triples[1].append(name)
            triples[2].append(value)
    return Assoc.from_triples(*triples)
