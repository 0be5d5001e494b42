"""Totally ordered mixed string/number keys and the sorted-set primitives.

Keys are plain Python values: ``str`` for text, ``float`` for numbers. The
total order puts every text key below every number key; text compares by
code point (equivalently, by its UTF-8 bytes) and numbers numerically.

All positions reported by this module are 1-based.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Key = str | float


def as_key(value) -> Key:
    """Validate and canonicalize a raw value into a key.

    Strings pass through unchanged; ints and floats become 64-bit floats,
    so ``1`` and ``1.0`` are the same key. Non-finite numbers, bools and
    unsupported types are rejected.
    """
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a valid key")
    if isinstance(value, (int, float)):
        try:
            number = float(value)
        except OverflowError:
            raise ValueError(f"number key out of float range: {value!r}") from None
        if not math.isfinite(number):
            raise ValueError(f"number keys must be finite, got {value!r}")
        return number
    raise TypeError(f"keys must be str or finite numbers, got {type(value).__name__}")


def compare_keys(a: Key, b: Key) -> int:
    """Three-way comparison under the key order: -1, 0 or 1.

    Any text key sorts below any number key; a text key is never equal to a
    number key.
    """
    a_text = isinstance(a, str)
    if a_text != isinstance(b, str):
        return -1 if a_text else 1
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def sort_token(key: Key) -> tuple[bool, Key]:
    """Embed the key order into plain tuple comparison, for ``sorted(key=...)``."""
    return (not isinstance(key, str), key)


def key_text(key: Key) -> str:
    """Text form of a key.

    Text keys render verbatim; number keys render in shortest round-trip
    decimal form, without a decimal point when integral.
    """
    if isinstance(key, str):
        return key
    if key.is_integer() and abs(key) < 1e16:
        return str(int(key))
    return repr(key)


@dataclass(frozen=True)
class SortedKeySet:
    """Strictly increasing, duplicate-free sequence of keys."""

    keys: tuple[Key, ...] = ()

    def __post_init__(self) -> None:
        previous = None
        for key in self.keys:
            if not isinstance(key, (str, float)) or isinstance(key, bool):
                raise TypeError(f"invalid key {key!r}")
            if isinstance(key, float) and not math.isfinite(key):
                raise ValueError(f"number keys must be finite, got {key!r}")
            if previous is not None and compare_keys(previous, key) >= 0:
                raise ValueError("keys must be strictly increasing")
            previous = key

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self) -> Iterator[Key]:
        return iter(self.keys)

    def __contains__(self, key) -> bool:
        return self.position(key) is not None

    def at(self, position: int) -> Key:
        """Key at a 1-based position."""
        if not 1 <= position <= len(self.keys):
            raise IndexError(f"position {position} out of range 1..{len(self.keys)}")
        return self.keys[position - 1]

    def position(self, key: Key) -> int | None:
        """1-based position of ``key``, or None when absent."""
        i = bisect_left(self._tokens, sort_token(key))
        if i < len(self.keys) and compare_keys(self.keys[i], key) == 0:
            return i + 1
        return None

    @cached_property
    def _tokens(self) -> tuple[tuple[bool, Key], ...]:
        return tuple(sort_token(k) for k in self.keys)


def make_set(raw: Iterable) -> tuple[SortedKeySet, list[int]]:
    """Sort and deduplicate ``raw`` into a key set, plus a position remap.

    ``remap[t]`` is the 1-based position of ``raw[t]`` in the returned set,
    so ``set.at(remap[t]) == raw[t]`` for every input element.
    """
    keys = [as_key(v) for v in raw]
    distinct = sorted(set(keys), key=sort_token)
    position = {key: t + 1 for t, key in enumerate(distinct)}
    return SortedKeySet(tuple(distinct)), [position[key] for key in keys]


def sorted_union(
    a: SortedKeySet, b: SortedKeySet
) -> tuple[SortedKeySet, list[int], list[int]]:
    """Union of two sorted key sets in one forward pass over both.

    Returns the union set and, for each input set, the 1-based position of
    each of its elements in the union. Both maps are strictly increasing.
    """
    ka, kb = a.keys, b.keys
    na, nb = len(ka), len(kb)
    out: list[Key] = []
    map_a: list[int] = []
    map_b: list[int] = []
    i = j = 0
    while i < na and j < nb:
        c = compare_keys(ka[i], kb[j])
        if c < 0:
            out.append(ka[i])
            map_a.append(len(out))
            i += 1
        elif c > 0:
            out.append(kb[j])
            map_b.append(len(out))
            j += 1
        else:
            out.append(ka[i])
            map_a.append(len(out))
            map_b.append(len(out))
            i += 1
            j += 1
    while i < na:
        out.append(ka[i])
        map_a.append(len(out))
        i += 1
    while j < nb:
        out.append(kb[j])
        map_b.append(len(out))
        j += 1
    return SortedKeySet(tuple(out)), map_a, map_b


def sorted_intersect(
    a: SortedKeySet, b: SortedKeySet
) -> tuple[SortedKeySet, list[int], list[int]]:
    """Intersection of two sorted key sets in one forward pass over both.

    Returns the intersection set and the 1-based position of each common
    key in ``a`` and in ``b``.
    """
    ka, kb = a.keys, b.keys
    na, nb = len(ka), len(kb)
    out: list[Key] = []
    pos_in_a: list[int] = []
    pos_in_b: list[int] = []
    i = j = 0
    while i < na and j < nb:
        c = compare_keys(ka[i], kb[j])
        if c < 0:
            i += 1
        elif c > 0:
            j += 1
        else:
            out.append(ka[i])
            pos_in_a.append(i + 1)
            pos_in_b.append(j + 1)
            i += 1
            j += 1
    return SortedKeySet(tuple(out)), pos_in_a, pos_in_b


def sorted_map(queries: Sequence, target: SortedKeySet) -> list[int | None]:
    """Map each query key to its 1-based position in ``target``.

    Absent queries map to None. ``queries`` must already be sorted ascending
    (duplicates allowed); this is checked, and lets the scan make one forward
    pass over both sequences.
    """
    keys = target.keys
    n = len(keys)
    result: list[int | None] = []
    previous: Key | None = None
    j = 0
    for raw in queries:
        q = as_key(raw)
        if previous is not None and compare_keys(previous, q) > 0:
            raise ValueError("sorted_map queries must be sorted ascending")
        previous = q
        while j < n and compare_keys(keys[j], q) < 0:
            j += 1
        if j < n and compare_keys(keys[j], q) == 0:
            result.append(j + 1)
        else:
            result.append(None)
    return result


def map_keys_unsorted(queries: Sequence, target: SortedKeySet) -> list[int | None]:
    """Order-insensitive convenience over :func:`sorted_map`.

    Sorts the queries, maps them, and restores the original order.
    """
    keys = [as_key(q) for q in queries]
    order = sorted(range(len(keys)), key=lambda t: sort_token(keys[t]))
    mapped = sorted_map([keys[t] for t in order], target)
    result: list[int | None] = [None] * len(keys)
    for rank, t in enumerate(order):
        result[t] = mapped[rank]
    return result
