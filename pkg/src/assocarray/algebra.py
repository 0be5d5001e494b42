"""Array algebra: numeric multiply, the two concatenating multiplies, and add.

All four operations align their operands through the sorted-set primitives:
the multiplies intersect A's column keys with B's row keys to form the inner
dimension, and add works over the union of the two key spaces.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable

import numpy as np
from scipy import sparse

from .assoc import Assoc
from .keys import Key, compare_keys, key_text, sorted_intersect, sorted_union


def _numeric(a: Assoc) -> Assoc:
    # Multiply and the numeric add cases are purely numerical: text-valued
    # arrays participate through their pattern only.
    return a.logical() if a.is_text_valued else a


def multiply(a: Assoc, b: Assoc) -> Assoc:
    """Numeric matrix product ``C[i,j] = sum_k A[i,k] * B[k,j]``.

    Text-valued operands are first converted to logical. The inner dimension
    is the intersection of ``a``'s column keys with ``b``'s row keys; output
    rows/cols are the referenced subsets of ``a``'s rows and ``b``'s cols.
    Cells whose sum is exactly zero are dropped.
    """
    a = _numeric(a)
    b = _numeric(b)
    inner, pos_a, pos_b = sorted_intersect(a.cols, b.rows)
    if not len(inner) or not a.cells or not b.cells:
        return Assoc()
    a_rank = {p: t for t, p in enumerate(pos_a)}
    b_rank = {p: t for t, p in enumerate(pos_b)}

    a_i, a_k, a_v = [], [], []
    for i, j, payload in a.cells:
        t = a_rank.get(j)
        if t is not None:
            a_i.append(i - 1)
            a_k.append(t)
            a_v.append(payload)
    b_k, b_j, b_v = [], [], []
    for i, j, payload in b.cells:
        t = b_rank.get(i)
        if t is not None:
            b_k.append(t)
            b_j.append(j - 1)
            b_v.append(payload)
    if not a_v or not b_v:
        return Assoc()

    amat = sparse.csr_matrix(
        (np.asarray(a_v, dtype=np.float64), (a_i, a_k)),
        shape=(len(a.rows), len(inner)),
    )
    bmat = sparse.csr_matrix(
        (np.asarray(b_v, dtype=np.float64), (b_k, b_j)),
        shape=(len(inner), len(b.cols)),
    )
    product = (amat @ bmat).tocoo()

    row_keys, col_keys = a.rows.keys, b.cols.keys
    cells: dict[tuple[Key, Key], float] = {}
    for i, j, value in zip(product.row, product.col, product.data):
        if value != 0.0:
            cells[(row_keys[i], col_keys[j])] = float(value)
    return Assoc.from_cell_map(cells)


def cat_key_mul(a: Assoc, b: Assoc, sep: str = ";") -> Assoc:
    """Matrix product whose cells concatenate the contributing inner keys.

    ``C[i,j]`` joins, in ascending key order, the text form of every inner
    key ``k`` (drawn from the intersection of ``a``'s cols and ``b``'s rows)
    at which both ``A[i,k]`` and ``B[k,j]`` are non-empty. The sparsity
    pattern therefore equals ``multiply(logical(a), logical(b))``'s.
    """
    return _cat_mul(a, b, sep, lambda k_text, av, bv: (k_text,))


def cat_val_mul(a: Assoc, b: Assoc, sep: str = ";") -> Assoc:
    """Matrix product whose cells concatenate the contributing cell values.

    Like :func:`cat_key_mul`, but each contributing inner key appends the
    rendered value of ``A[i,k]`` immediately followed by ``B[k,j]``. Repeated
    values are never deduplicated.
    """
    return _cat_mul(a, b, sep, lambda k_text, av, bv: (key_text(av), key_text(bv)))


def _cat_mul(
    a: Assoc,
    b: Assoc,
    sep: str,
    parts: Callable[[str, Key | float, Key | float], tuple[str, ...]],
) -> Assoc:
    if not sep:
        raise ValueError("separator must be non-empty")
    inner, pos_a, pos_b = sorted_intersect(a.cols, b.rows)
    if not len(inner):
        return Assoc()
    a_rank = {p: t for t, p in enumerate(pos_a)}
    b_rank = {p: t for t, p in enumerate(pos_b)}

    # Bucket cells by inner key; row-major iteration keeps each bucket sorted.
    a_by_k: list[list[tuple[int, Key | float]]] = [[] for _ in range(len(inner))]
    for i, j, payload in a.cells:
        t = a_rank.get(j)
        if t is not None:
            value = payload if a.vals is None else a.vals.at(payload)
            a_by_k[t].append((i, value))
    b_by_k: list[list[tuple[int, Key | float]]] = [[] for _ in range(len(inner))]
    for i, j, payload in b.cells:
        t = b_rank.get(i)
        if t is not None:
            value = payload if b.vals is None else b.vals.at(payload)
            b_by_k[t].append((j, value))

    row_keys, col_keys = a.rows.keys, b.cols.keys
    joined: dict[tuple[Key, Key], list[str]] = defaultdict(list)
    for t in range(len(inner)):
        if not a_by_k[t] or not b_by_k[t]:
            continue
        k_text = key_text(inner.at(t + 1))
        for i, a_value in a_by_k[t]:
            rk = row_keys[i - 1]
            for j, b_value in b_by_k[t]:
                joined[(rk, col_keys[j - 1])].extend(parts(k_text, a_value, b_value))
    return Assoc.from_cell_map(
        {coord: sep.join(pieces) for coord, pieces in joined.items()}
    )


def add(a: Assoc, b: Assoc) -> Assoc:
    """Element-wise addition over the union of the two key spaces.

    Four cases by operand kind: text+text keeps the union of both patterns
    with the per-cell maximum under the key order where both are present;
    numeric+text adds an indicator of the text operand's cells to the numeric
    values; numeric+numeric sums, dropping exact zeros. An empty array is the
    identity in every case.
    """
    if not a.cells:
        return b.condense()
    if not b.cells:
        return a.condense()

    union_rows, row_map_a, row_map_b = sorted_union(a.rows, b.rows)
    union_cols, col_map_a, col_map_b = sorted_union(a.cols, b.cols)
    cells_a = _union_coords(a, row_map_a, col_map_a)
    cells_b = _union_coords(b, row_map_b, col_map_b)

    out: dict[tuple[int, int], Key | float] = {}
    if a.is_text_valued and b.is_text_valued:
        for coord, value in cells_a.items():
            out[coord] = value
        for coord, value in cells_b.items():
            current = out.get(coord)
            if current is None or compare_keys(value, current) > 0:
                out[coord] = value
    elif b.is_text_valued:
        out = _indicator_sum(cells_a, cells_b)
    elif a.is_text_valued:
        out = _indicator_sum(cells_b, cells_a)
    else:
        for coord in cells_a.keys() | cells_b.keys():
            out[coord] = cells_a.get(coord, 0.0) + cells_b.get(coord, 0.0)

    rk, ck = union_rows.keys, union_cols.keys
    return Assoc.from_cell_map(
        {(rk[i - 1], ck[j - 1]): v for (i, j), v in out.items()}
    )


def _union_coords(a: Assoc, row_map: list[int], col_map: list[int]) -> dict[tuple[int, int], Key | float]:
    vals = a.vals
    out: dict[tuple[int, int], Key | float] = {}
    for i, j, payload in a.cells:
        value = payload if vals is None else vals.at(payload)
        out[(row_map[i - 1], col_map[j - 1])] = value
    return out


def _indicator_sum(numeric_cells: dict, text_cells: dict) -> dict[tuple[int, int], float]:
    out: dict[tuple[int, int], float] = {}
    for coord in numeric_cells.keys() | text_cells.keys():
        out[coord] = numeric_cells.get(coord, 0.0) + (1.0 if coord in text_cells else 0.0)
    return out


def identity_over(keys) -> Assoc:
    """Square array with ones on the diagonal of the given key set."""
    return Assoc.from_cell_map({(k, k): 1.0 for k in keys})
