"""Tables, attribute-set partitions, and stripped-partition products.

All cells are strings.  Tuple ids are 0-based row positions in file order;
every equivalence class is stored as a sorted tuple of ids, and classes are
ordered by their representative (smallest id), which keeps partitions and
everything derived from them deterministic.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence

AttrSet = tuple[int, ...]


class RelationError(ValueError):
    """Raised when tabular input is malformed."""


def attr_set(attrs: Iterable[int]) -> AttrSet:
    """Canonical attribute set: sorted, duplicate-free, non-negative indices."""
    result = tuple(sorted(set(attrs)))
    if result and result[0] < 0:
        raise ValueError("attribute indices must be non-negative")
    return result


@dataclass(frozen=True)
class Relation:
    """Immutable table of string cells with a named schema."""

    schema: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if len(set(self.schema)) != len(self.schema):
            raise RelationError("duplicate attribute name in schema")
        width = len(self.schema)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise RelationError(f"row {i + 1} has {len(row)} cells, expected {width}")

    @property
    def n(self) -> int:
        return len(self.rows)

    def attr_index(self, name: str) -> int:
        try:
            return self.schema.index(name)
        except ValueError:
            raise RelationError(f"unknown attribute {name!r}") from None


@dataclass(frozen=True)
class Partition:
    """Equivalence classes of tuple ids that agree (string equality) on ``over``."""

    over: AttrSet
    classes: tuple[tuple[int, ...], ...]

    @property
    def covered_count(self) -> int:
        return sum(len(c) for c in self.classes)

    @property
    def is_superkey(self) -> bool:
        return all(len(c) == 1 for c in self.classes)


@dataclass(frozen=True)
class StrippedPartition:
    """A partition with its size-one classes removed.

    Singleton classes cannot violate any dependency over ``over``, so only
    classes of two or more tuples are kept; ``covered_count`` is the number
    of tuples they contain.
    """

    over: AttrSet
    classes: tuple[tuple[int, ...], ...]
    covered_count: int

    @property
    def is_superkey(self) -> bool:
        return not self.classes


def relation_from_rows(schema: Sequence[str], rows: Iterable[Sequence[str]]) -> Relation:
    return Relation(tuple(schema), tuple(tuple(row) for row in rows))


def load_relation(
    source: str | Path | IO[str],
    *,
    delimiter: str = ",",
    header: bool = True,
) -> Relation:
    """Load a delimited UTF-8 text file (RFC-4180-style quoting).

    With ``header`` the first row becomes the schema; otherwise attribute
    names ``A1..An`` are synthesized from the first data row's width.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8", newline="") as handle:
            return _parse_rows(csv.reader(handle, delimiter=delimiter), header)
    return _parse_rows(csv.reader(source, delimiter=delimiter), header)


def _parse_rows(reader: Iterable[list[str]], header: bool) -> Relation:
    rows = [tuple(row) for row in reader]
    if not rows:
        raise RelationError("empty input")
    if header:
        schema, data = rows[0], rows[1:]
    else:
        schema, data = tuple(f"A{i + 1}" for i in range(len(rows[0]))), rows
    if len(set(schema)) != len(schema):
        raise RelationError("duplicate attribute name in header")
    width = len(schema)
    for i, row in enumerate(data):
        if len(row) != width:
            raise RelationError(f"row {i + 1} has {len(row)} cells, expected {width}")
    return Relation(tuple(schema), tuple(data))


def partition(relation: Relation, attrs: AttrSet) -> Partition:
    """Group tuple ids by string equality over ``attrs``."""
    for a in attrs:
        if not 0 <= a < len(relation.schema):
            raise RelationError(f"unknown attribute index {a}")
    groups: dict[tuple[str, ...], list[int]] = {}
    if len(attrs) == 1:
        a = attrs[0]
        single: dict[str, list[int]] = {}
        for i, row in enumerate(relation.rows):
            single.setdefault(row[a], []).append(i)
        classes = sorted(single.values(), key=lambda c: c[0])
    else:
        for i, row in enumerate(relation.rows):
            key = tuple(row[a] for a in attrs)
            groups.setdefault(key, []).append(i)
        classes = sorted(groups.values(), key=lambda c: c[0])
    return Partition(attr_set(attrs), tuple(tuple(c) for c in classes))


def strip(part: Partition) -> StrippedPartition:
    """Drop singleton classes; they cannot violate any dependency."""
    kept = tuple(c for c in part.classes if len(c) >= 2)
    return StrippedPartition(part.over, kept, sum(len(c) for c in kept))


def product(a: StrippedPartition, b: StrippedPartition) -> StrippedPartition:
    """Stripped partition over the union of attribute sets.

    Equals ``strip(partition(r, a.over | b.over))`` and runs in time linear
    in the covered tuple counts.
    """
    class_of: dict[int, int] = {}
    for index, cls in enumerate(a.classes):
        for t in cls:
            class_of[t] = index
    out: list[tuple[int, ...]] = []
    for cls in b.classes:
        buckets: dict[int, list[int]] = {}
        for t in cls:
            left = class_of.get(t)
            if left is not None:
                buckets.setdefault(left, []).append(t)
        for group in buckets.values():
            if len(group) >= 2:
                out.append(tuple(group))
    out.sort(key=lambda c: c[0])
    return StrippedPartition(
        attr_set(a.over + b.over), tuple(out), sum(len(c) for c in out)
    )
