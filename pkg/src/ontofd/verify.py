"""Dependency verification: sense agreement per equivalence class.

A candidate ``X -> A`` holds exactly when, inside every equivalence class of
the antecedent partition, the distinct consequent values share at least one
sense (synonym mode) or one common ancestor within ``theta`` is-a edges of
every value (inheritance mode).  The approximate variants compute, per class,
the largest tuple subset consistent with a single sense or ancestor, which
yields the support of the candidate over the whole table.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .ontology import ClassId, Ontology
from .relation import AttrSet, Partition, Relation, StrippedPartition


@dataclass(frozen=True)
class Synonym:
    """Consequent values must share a sense within each class."""


@dataclass(frozen=True)
class Inheritance:
    """Consequent values must share an ancestor within ``theta`` is-a edges."""

    theta: int

    def __post_init__(self) -> None:
        if self.theta < 0:
            raise ValueError("theta must be non-negative")


OfdKind = Union[Synonym, Inheritance]

AnyPartition = Union[Partition, StrippedPartition]


@dataclass(frozen=True)
class Ofd:
    """A dependency lhs -> rhs of a given kind, with optional support."""

    lhs: AttrSet
    rhs: int
    kind: OfdKind
    support: float | None = None

    def __post_init__(self) -> None:
        if self.rhs in self.lhs:
            raise ValueError("trivial dependency: rhs appears in lhs")


@dataclass(frozen=True)
class ViolatingClass:
    """An equivalence class whose distinct consequent values share no sense."""

    representative: int
    values: tuple[str, ...]


@dataclass(frozen=True)
class ClassMajority:
    """Largest single-sense tuple group of one equivalence class.

    ``members`` carry a value consistent with ``sense``; ``others`` are the
    remaining tuples of the class.  Ties between senses are broken by the
    lexicographically smallest class id.
    """

    representative: int
    sense: ClassId
    members: tuple[int, ...]
    others: tuple[int, ...]


@dataclass(frozen=True)
class VerifyOutcome:
    holds: bool
    support: float
    witnesses: tuple[ViolatingClass, ...]


@dataclass(frozen=True)
class SupportOutcome:
    support: float
    satisfied: int
    classes: tuple[ClassMajority, ...]


SenseFn = Callable[[str], frozenset[ClassId]]


def _check_attr(relation: Relation, part: AnyPartition, a: int) -> None:
    if not 0 <= a < len(relation.schema):
        raise ValueError(f"unknown attribute index {a}")
    if a in part.over:
        raise ValueError("consequent attribute may not appear in the antecedent")


def _verify(
    relation: Relation,
    part: AnyPartition,
    a: int,
    senses_of: SenseFn,
    equal_fast_path: bool,
) -> VerifyOutcome:
    n = relation.n
    rows = relation.rows
    satisfied = 0
    witnesses: list[ViolatingClass] = []
    for cls in part.classes:
        first = rows[cls[0]][a]
        if equal_fast_path and all(rows[t][a] == first for t in cls):
            satisfied += len(cls)
            continue
        distinct: list[str] = []
        seen: set[str] = set()
        for t in cls:
            value = rows[t][a]
            if value not in seen:
                seen.add(value)
                distinct.append(value)
        counts: dict[ClassId, int] = {}
        for value in distinct:
            for sense in senses_of(value):
                counts[sense] = counts.get(sense, 0) + 1
        if counts and max(counts.values()) == len(distinct):
            satisfied += len(cls)
        else:
            witnesses.append(ViolatingClass(cls[0], tuple(distinct)))
    satisfied += n - part.covered_count
    support = 1.0 if n == 0 else satisfied / n
    return VerifyOutcome(not witnesses, support, tuple(witnesses))


def _support(
    relation: Relation,
    part: AnyPartition,
    a: int,
    senses_of: SenseFn,
    equal_fast_path: bool,
) -> SupportOutcome:
    n = relation.n
    rows = relation.rows
    satisfied = 0
    majorities: list[ClassMajority] = []
    for cls in part.classes:
        first = rows[cls[0]][a]
        if equal_fast_path and all(rows[t][a] == first for t in cls):
            sense = min(senses_of(first))
            satisfied += len(cls)
            majorities.append(ClassMajority(cls[0], sense, tuple(cls), ()))
            continue
        counts: dict[ClassId, int] = {}
        for t in cls:
            for sense in senses_of(rows[t][a]):
                counts[sense] = counts.get(sense, 0) + 1
        best = max(counts.values())
        best_sense = min(s for s, c in counts.items() if c == best)
        members = tuple(t for t in cls if best_sense in senses_of(rows[t][a]))
        others = tuple(t for t in cls if best_sense not in senses_of(rows[t][a]))
        satisfied += best
        majorities.append(ClassMajority(cls[0], best_sense, members, others))
    satisfied += n - part.covered_count
    support = 1.0 if n == 0 else satisfied / n
    return SupportOutcome(support, satisfied, tuple(majorities))


def verify_synonym(
    relation: Relation,
    ontology: Ontology,
    part: AnyPartition,
    a: int,
    *,
    equal_fast_path: bool = True,
) -> VerifyOutcome:
    """Exact synonym check: every class's distinct values share a sense."""
    _check_attr(relation, part, a)
    return _verify(relation, part, a, ontology.names, equal_fast_path)


def verify_inheritance(
    relation: Relation,
    ontology: Ontology,
    part: AnyPartition,
    a: int,
    theta: int,
    *,
    equal_fast_path: bool = True,
) -> VerifyOutcome:
    """Exact inheritance check: a common ancestor within ``theta`` per class."""
    _check_attr(relation, part, a)
    if theta < 0:
        raise ValueError("theta must be non-negative")
    return _verify(
        relation, part, a, lambda v: ontology.theta_ancestors(v, theta), equal_fast_path
    )


def support_synonym(
    relation: Relation,
    ontology: Ontology,
    part: AnyPartition,
    a: int,
    *,
    equal_fast_path: bool = True,
) -> SupportOutcome:
    """Support of the synonym candidate: per-class majority-sense tuple counts."""
    _check_attr(relation, part, a)
    return _support(relation, part, a, ontology.names, equal_fast_path)


def support_inheritance(
    relation: Relation,
    ontology: Ontology,
    part: AnyPartition,
    a: int,
    theta: int,
    *,
    equal_fast_path: bool = True,
) -> SupportOutcome:
    """Support of the inheritance candidate at the given ``theta``."""
    _check_attr(relation, part, a)
    if theta < 0:
        raise ValueError("theta must be non-negative")
    return _support(
        relation, part, a, lambda v: ontology.theta_ancestors(v, theta), equal_fast_path
    )


def verify(
    relation: Relation,
    ontology: Ontology,
    part: AnyPartition,
    a: int,
    kind: OfdKind,
    *,
    equal_fast_path: bool = True,
) -> VerifyOutcome:
    """Exact check dispatched on the dependency kind."""
    if isinstance(kind, Synonym):
        return verify_synonym(relation, ontology, part, a, equal_fast_path=equal_fast_path)
    return verify_inheritance(
        relation, ontology, part, a, kind.theta, equal_fast_path=equal_fast_path
    )


def support(
    relation: Relation,
    ontology: Ontology,
    part: AnyPartition,
    a: int,
    kind: OfdKind,
    *,
    equal_fast_path: bool = True,
) -> SupportOutcome:
    """Support computation dispatched on the dependency kind."""
    if isinstance(kind, Synonym):
        return support_synonym(relation, ontology, part, a, equal_fast_path=equal_fast_path)
    return support_inheritance(
        relation, ontology, part, a, kind.theta, equal_fast_path=equal_fast_path
    )
