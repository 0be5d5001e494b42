"""The associative array: sparse 2-D data keyed by sorted key sets.

An :class:`Assoc` stores cells as ``(i, j, payload)`` triples over its row
and column key sets, with 1-based positions and row-major ordering. Values
live either directly in the cells (numeric store, never exactly zero) or as
1-based positions into a sorted value key set (used whenever any value is
text). Every constructor and operation returns a condensed array: each row
key, column key and value entry is referenced by at least one cell.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .keys import (
    Key,
    SortedKeySet,
    as_key,
    compare_keys,
    key_text,
    make_set,
    map_keys_unsorted,
)

Cell = tuple[int, int, float | int]

COLLISION_POLICIES = ("sum", "min", "max", "last")


@dataclass(frozen=True, repr=False)
class Assoc:
    """Sparse 2-D array keyed by sorted row and column key sets.

    ``cells`` holds ``(i, j, payload)`` in row-major order. With ``vals``
    present, payloads are 1-based positions into it; otherwise payloads are
    the numeric cell values themselves.

    Instances are immutable; every operation returns a new array.
    """

    rows: SortedKeySet = SortedKeySet()
    cols: SortedKeySet = SortedKeySet()
    vals: SortedKeySet | None = None
    cells: tuple[Cell, ...] = ()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_triples(
        cls,
        row_keys: Sequence,
        col_keys: Sequence,
        values: Sequence,
        collision: str | None = None,
    ) -> "Assoc":
        """Build a condensed array from parallel (row, col, value) sequences.

        Duplicate (row, col) pairs merge in input order under ``collision``:
        one of ``"sum"``, ``"min"``, ``"max"``, ``"last"``. The default is
        ``"sum"`` when every value is numeric, else ``"max"``. ``"min"`` and
        ``"max"`` compare values under the key order; ``"sum"`` requires
        numeric values.
        """
        if not (len(row_keys) == len(col_keys) == len(values)):
            raise ValueError(
                "row_keys, col_keys and values must have equal lengths, got "
                f"{len(row_keys)}/{len(col_keys)}/{len(values)}"
            )
        vals = [as_key(v) for v in values]
        if collision is None:
            collision = "max" if any(isinstance(v, str) for v in vals) else "sum"
        elif collision not in COLLISION_POLICIES:
            raise ValueError(f"unknown collision policy {collision!r}")
        if collision == "sum" and any(isinstance(v, str) for v in vals):
            raise TypeError("collision policy 'sum' requires numeric values")

        merged: dict[tuple[Key, Key], Key] = {}
        for rk, ck, value in zip(row_keys, col_keys, vals):
            coord = (as_key(rk), as_key(ck))
            current = merged.get(coord)
            if current is None:
                merged[coord] = value
            elif collision == "sum":
                merged[coord] = current + value
            elif collision == "min":
                if compare_keys(value, current) < 0:
                    merged[coord] = value
            elif collision == "max":
                if compare_keys(value, current) > 0:
                    merged[coord] = value
            else:
                merged[coord] = value
        return cls.from_cell_map(merged)

    @classmethod
    def from_cell_map(cls, cell_values: Mapping[tuple[Key, Key], Key | float]) -> "Assoc":
        """Build a condensed array from a ``{(row key, col key): value}`` map.

        This is the single normalization point: it picks the store variant
        (numeric unless some value is text), drops exact numeric zeros, and
        sorts cells row-major.
        """
        entries = [
            (as_key(r), as_key(c), as_key(v)) for (r, c), v in cell_values.items()
        ]
        textual = any(isinstance(v, str) for _, _, v in entries)
        if not textual:
            entries = [e for e in entries if e[2] != 0.0]
        if not entries:
            return cls()
        rows, row_pos = make_set([r for r, _, _ in entries])
        cols, col_pos = make_set([c for _, c, _ in entries])
        if textual:
            vals, payloads = make_set([v for _, _, v in entries])
            store: SortedKeySet | None = vals
        else:
            store = None
            payloads = [v for _, _, v in entries]
        cells = sorted(
            (i, j, p) for i, j, p in zip(row_pos, col_pos, payloads)
        )
        return cls(rows, cols, store, tuple(cells))

    # -- basic views -------------------------------------------------------

    @property
    def nnz(self) -> int:
        return len(self.cells)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.cols))

    @property
    def is_text_valued(self) -> bool:
        """True when values are stored through the value key set."""
        return self.vals is not None

    def __repr__(self) -> str:
        kind = "text" if self.is_text_valued else "numeric"
        return f"<Assoc {len(self.rows)}x{len(self.cols)}, {self.nnz} cells, {kind}>"

    def items(self) -> Iterator[tuple[Key, Key, Key | float]]:
        """Yield (row key, col key, value) per cell in row-major order."""
        row_keys, col_keys = self.rows.keys, self.cols.keys
        if self.vals is None:
            for i, j, payload in self.cells:
                yield row_keys[i - 1], col_keys[j - 1], payload
        else:
            val_keys = self.vals.keys
            for i, j, payload in self.cells:
                yield row_keys[i - 1], col_keys[j - 1], val_keys[payload - 1]

    def triples(self) -> tuple[list[Key], list[Key], list[Key | float]]:
        """Row-major (row keys, col keys, values) lists; inverse of
        :meth:`from_triples` for condensed arrays."""
        rows: list[Key] = []
        cols: list[Key] = []
        values: list[Key | float] = []
        for r, c, v in self.items():
            rows.append(r)
            cols.append(c)
            values.append(v)
        return rows, cols, values

    def get(self, row_key, col_key) -> Key | float | None:
        """Value stored at (row_key, col_key), or None when the cell is empty."""
        i = self.rows.position(as_key(row_key))
        if i is None:
            return None
        j = self.cols.position(as_key(col_key))
        if j is None:
            return None
        payload = self._cell_index.get((i, j))
        if payload is None:
            return None
        return payload if self.vals is None else self.vals.at(payload)

    @cached_property
    def _cell_index(self) -> dict[tuple[int, int], float | int]:
        return {(i, j): payload for i, j, payload in self.cells}

    # -- selection ---------------------------------------------------------

    def select_positions(self, row_positions: Sequence[int], col_positions: Sequence[int]) -> "Assoc":
        """Sub-array on 1-based row/col positions, condensed.

        Duplicate positions are ignored; out-of-bounds positions raise
        IndexError.
        """
        keep_rows = _position_set(row_positions, len(self.rows), "row")
        keep_cols = _position_set(col_positions, len(self.cols), "col")
        picked: dict[tuple[Key, Key], Key | float] = {}
        row_keys, col_keys = self.rows.keys, self.cols.keys
        vals = self.vals
        for i, j, payload in self.cells:
            if i in keep_rows and j in keep_cols:
                value = payload if vals is None else vals.at(payload)
                picked[(row_keys[i - 1], col_keys[j - 1])] = value
        return Assoc.from_cell_map(picked)

    def select_keys(self, row_keys: Sequence, col_keys: Sequence) -> "Assoc":
        """Sub-array on row/col key values; absent keys silently select nothing."""
        rows = [p for p in map_keys_unsorted(row_keys, self.rows) if p is not None]
        cols = [p for p in map_keys_unsorted(col_keys, self.cols) if p is not None]
        return self.select_positions(rows, cols)

    def select_regex(
        self,
        row_pattern: str | re.Pattern | None = None,
        col_pattern: str | re.Pattern | None = None,
    ) -> "Assoc":
        """Sub-array on keys whose text form matches a pattern.

        Matching is unanchored (``re.search``) against :func:`key_text`; a
        None pattern selects everything on that axis.
        """
        rows = _regex_positions(row_pattern, self.rows)
        cols = _regex_positions(col_pattern, self.cols)
        return self.select_positions(rows, cols)

    # -- structural operations ----------------------------------------------

    def transpose(self) -> "Assoc":
        """Swap rows and columns; values are unchanged."""
        return Assoc.from_cell_map({(c, r): v for r, c, v in self.items()})

    def logical(self) -> "Assoc":
        """Replace every stored value with numeric 1, keeping the pattern."""
        return Assoc.from_cell_map({(r, c): 1.0 for r, c, _ in self.items()})

    def condense(self) -> "Assoc":
        """Drop unreferenced row/col/value keys and renumber positions."""
        return Assoc.from_cell_map({(r, c): v for r, c, v in self.items()})

    # -- algebra affordances -------------------------------------------------

    def __matmul__(self, other):
        if not isinstance(other, Assoc):
            return NotImplemented
        from .algebra import multiply

        return multiply(self, other)

    def __add__(self, other):
        if not isinstance(other, Assoc):
            return NotImplemented
        from .algebra import add

        return add(self, other)

    # -- integrity ------------------------------------------------------------

    def validate(self) -> "Assoc":
        """Check every structural invariant, returning self.

        Raises ValueError on any violation: unsorted key sets, cell bounds or
        ordering, duplicate coordinates, stored numeric zeros, dangling value
        positions, or an uncondensed array.
        """
        nrows, ncols = self.shape
        seen_rows: set[int] = set()
        seen_cols: set[int] = set()
        seen_vals: set[int] = set()
        previous: tuple[int, int] | None = None
        for i, j, payload in self.cells:
            if not (_is_position(i) and _is_position(j)):
                raise ValueError(f"cell positions must be positive ints: {(i, j)!r}")
            if not (i <= nrows and j <= ncols):
                raise ValueError(f"cell {(i, j)} outside {nrows}x{ncols}")
            if previous is not None and (i, j) <= previous:
                raise ValueError("cells must be strictly row-major ordered")
            previous = (i, j)
            seen_rows.add(i)
            seen_cols.add(j)
            if self.vals is None:
                if isinstance(payload, bool) or not isinstance(payload, (int, float)):
                    raise ValueError(f"numeric payload expected, got {payload!r}")
                if payload == 0.0 or not math.isfinite(payload):
                    raise ValueError(f"numeric cells must be finite and nonzero, got {payload!r}")
            else:
                if not _is_position(payload) or payload > len(self.vals):
                    raise ValueError(f"value position {payload!r} out of range")
                seen_vals.add(payload)
        if len(seen_rows) != nrows or len(seen_cols) != ncols:
            raise ValueError("array is not condensed: unreferenced row or col keys")
        if self.vals is not None:
            if len(seen_vals) != len(self.vals):
                raise ValueError("array is not condensed: unreferenced values")
            if not any(isinstance(v, str) for v in self.vals):
                raise ValueError("key-indexed store requires at least one text value")
        return self


def _is_position(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= 1


def _position_set(positions: Sequence[int], size: int, axis: str) -> set[int]:
    out: set[int] = set()
    for p in positions:
        if not _is_position(p):
            raise TypeError(f"{axis} positions must be positive ints, got {p!r}")
        if p > size:
            raise IndexError(f"{axis} position {p} out of range 1..{size}")
        out.add(p)
    return out


def _regex_positions(pattern, keys: SortedKeySet) -> list[int]:
    if pattern is None:
        return list(range(1, len(keys) + 1))
    rx = re.compile(pattern)
    return [t + 1 for t, key in enumerate(keys) if rx.search(key_text(key))]
