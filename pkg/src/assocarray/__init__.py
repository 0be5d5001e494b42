"""Associative arrays: sparse 2-D data over sorted mixed string/number keys.

The container (:class:`Assoc`) keeps rows, columns and values as totally
ordered sorted sets and its cells as a sparse index matrix. On top of it sit
the algebraic operations (numeric multiply, the concatenating multiplies,
element-wise add), delimited-file persistence, a dense-table bridge, and a
benchmark harness with a CLI (``assoc-bench``).
"""

from .algebra import add, cat_key_mul, cat_val_mul, identity_over, multiply
from .assoc import Assoc, COLLISION_POLICIES
from .bench import (
    BenchRecord,
    GenSpec,
    emit_results,
    flop_count,
    generate_scaled_assoc,
    generate_triples,
    run_benchmark,
)
from .io import (
    DenseTable,
    FormatError,
    from_dense_table,
    read_delimited,
    to_dense_table,
    write_delimited,
)
from .keys import (
    Key,
    SortedKeySet,
    as_key,
    compare_keys,
    key_text,
    make_set,
    map_keys_unsorted,
    sorted_intersect,
    sorted_map,
    sorted_union,
)

__version__ = "0.1.0"

__all__ = [
    "Assoc",
    "BenchRecord",
    "COLLISION_POLICIES",
    "DenseTable",
    "FormatError",
    "GenSpec",
    "Key",
    "SortedKeySet",
    "add",
    "as_key",
    "cat_key_mul",
    "cat_val_mul",
    "compare_keys",
    "emit_results",
    "flop_count",
    "from_dense_table",
    "generate_scaled_assoc",
    "generate_triples",
    "identity_over",
    "key_text",
    "make_set",
    "map_keys_unsorted",
    "multiply",
    "read_delimited",
    "run_benchmark",
    "sorted_intersect",
    "sorted_map",
    "sorted_union",
    "to_dense_table",
    "write_delimited",
]
