"""Level-wise discovery of minimal dependencies over the attribute lattice.

Nodes at level ``l`` are attribute sets of size ``l``; the candidates tested
at a node ``X`` are ``(X \\ A) -> A`` for each ``A`` in ``X``, so antecedents
of size ``l - 1`` are decided while processing level ``l``.  The candidate
set ``C+(X)`` of a node is the intersection of its parents' candidate sets;
an attribute is dropped from it when the corresponding dependency is found to
hold, which silently prunes every non-minimal superset candidate downstream.
Verification of ``(X \\ A) -> A`` uses the parent node's partition, built
once per node as the product of two sibling partitions.

Reported levels count antecedent attributes: level 1 covers single-attribute
antecedents, and ``max_level`` caps the antecedent size.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence, Union

from .ontology import Ontology
from .relation import (
    AttrSet,
    Partition,
    Relation,
    StrippedPartition,
    attr_set,
    partition,
    product,
    strip,
)
from .verify import Inheritance, Ofd, OfdKind, Synonym, support, verify

NodePartition = Union[Partition, StrippedPartition]


@dataclass
class DiscoveryConfig:
    """Search parameters: dependency kind, support threshold, and pruning flags.

    ``tau`` is the minimum support; 1.0 requests exact dependencies.
    ``max_level`` caps the antecedent size.  The four flags disable
    individual prunings; they never change the discovered set, only the
    amount of verification work.
    """

    kind: OfdKind
    tau: float = 1.0
    max_level: int | None = None
    opt2: bool = True
    opt3: bool = True
    opt4: bool = True
    stripped: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.tau <= 1.0:
            raise ValueError("tau must be in (0, 1]")
        if self.max_level is not None and self.max_level < 1:
            raise ValueError("max_level must be at least 1")
        if not isinstance(self.kind, (Synonym, Inheritance)):
            raise ValueError("kind must be Synonym or Inheritance")


@dataclass(frozen=True)
class LevelStats:
    level: int
    candidates: int
    ofds: int
    seconds: float


@dataclass
class LatticeNode:
    """One attribute set with its partition and surviving rhs candidates."""

    attrs: AttrSet
    part: NodePartition
    candidates: set[int] = field(default_factory=set)

    @property
    def is_superkey(self) -> bool:
        return self.part.is_superkey


@dataclass(frozen=True)
class CandidatePlan:
    """How each candidate at a node gets resolved."""

    test: tuple[int, ...]
    key_resolved: frozenset[int]
    equal_fast_path: bool


@dataclass
class DiscoveryResult:
    ofds: list[Ofd]
    per_level: list[LevelStats]
    keys_found: list[AttrSet]


def _node_partition(relation: Relation, attrs: AttrSet, cfg: DiscoveryConfig) -> NodePartition:
    if cfg.stripped:
        return strip(partition(relation, attrs))
    return partition(relation, attrs)


def calculate_next_level(
    current: Sequence[LatticeNode], relation: Relation, cfg: DiscoveryConfig
) -> list[LatticeNode]:
    """Join pairs of same-level nodes that share all but their last attribute."""
    blocks: dict[AttrSet, list[LatticeNode]] = {}
    for node in current:
        blocks.setdefault(node.attrs[:-1], []).append(node)
    next_nodes: list[LatticeNode] = []
    for block in blocks.values():
        block.sort(key=lambda n: n.attrs)
        for left, right in combinations(block, 2):
            attrs = attr_set(left.attrs + right.attrs)
            if cfg.stripped:
                part: NodePartition = product(left.part, right.part)
            else:
                part = partition(relation, attrs)
            next_nodes.append(LatticeNode(attrs, part))
    next_nodes.sort(key=lambda n: n.attrs)
    return next_nodes


def apply_optimizations(
    node: LatticeNode,
    parents: Mapping[AttrSet, LatticeNode],
    cfg: DiscoveryConfig,
) -> CandidatePlan:
    """Resolution plan for the candidates of one node.

    Trivial candidates never exist (the rhs is always drawn from the node
    itself, so the antecedent excludes it by construction).  A candidate
    whose antecedent is a superkey needs no verification; the remaining ones
    go through the verifier, optionally with the all-equal-values shortcut.
    """
    if cfg.opt2:
        examine = sorted(set(node.attrs) & node.candidates)
    else:
        examine = list(node.attrs)
    key_resolved = set()
    if cfg.opt3:
        for a in examine:
            lhs = attr_set(v for v in node.attrs if v != a)
            if parents[lhs].is_superkey:
                key_resolved.add(a)
    return CandidatePlan(tuple(examine), frozenset(key_resolved), cfg.opt4)


@dataclass
class _Accumulator:
    """Mutable search state shared across levels."""

    ofds: list[Ofd] = field(default_factory=list)
    keys_found: list[AttrSet] = field(default_factory=list)
    # rhs -> antecedents of every candidate found valid so far; consulted for
    # minimality only when candidate-set pruning is disabled.
    valid_by_rhs: dict[int, list[frozenset[int]]] = field(default_factory=dict)
    candidates_tested: int = 0
    emitted: int = 0


def compute_ofds(
    level: Sequence[LatticeNode],
    parents: Mapping[AttrSet, LatticeNode],
    relation: Relation,
    ontology: Ontology,
    cfg: DiscoveryConfig,
    acc: _Accumulator,
) -> list[Ofd]:
    """Test the candidates of one level and prune the candidate sets."""
    n_attrs = len(relation.schema)
    if cfg.opt2:
        for node in level:
            candidates = set(range(n_attrs))
            for b in node.attrs:
                parent = attr_set(v for v in node.attrs if v != b)
                candidates &= parents[parent].candidates
            node.candidates = candidates
    emitted: list[Ofd] = []
    for node in level:
        plan = apply_optimizations(node, parents, cfg)
        for a in plan.test:
            lhs = attr_set(v for v in node.attrs if v != a)
            acc.candidates_tested += 1
            if a in plan.key_resolved:
                holds, sup = True, 1.0
            else:
                parent_part = parents[lhs].part
                if cfg.tau >= 1.0:
                    outcome = verify(
                        relation, ontology, parent_part, a, cfg.kind,
                        equal_fast_path=plan.equal_fast_path,
                    )
                    holds, sup = outcome.holds, outcome.support
                else:
                    result = support(
                        relation, ontology, parent_part, a, cfg.kind,
                        equal_fast_path=plan.equal_fast_path,
                    )
                    holds, sup = result.support >= cfg.tau, result.support
            if not holds:
                continue
            if cfg.opt2:
                emitted.append(Ofd(lhs, a, cfg.kind, sup))
                node.candidates.discard(a)
            else:
                lhs_set = frozenset(lhs)
                minimal = not any(
                    prior < lhs_set for prior in acc.valid_by_rhs.get(a, ())
                )
                acc.valid_by_rhs.setdefault(a, []).append(lhs_set)
                if minimal:
                    emitted.append(Ofd(lhs, a, cfg.kind, sup))
    acc.ofds.extend(emitted)
    acc.emitted += len(emitted)
    return emitted


def _record_keys(level: Sequence[LatticeNode], acc: _Accumulator) -> None:
    for node in level:
        if node.is_superkey:
            covered = any(set(key) <= set(node.attrs) for key in acc.keys_found)
            if not covered:
                acc.keys_found.append(node.attrs)


def discover(
    relation: Relation,
    ontology: Ontology,
    cfg: DiscoveryConfig,
    *,
    base_partitions: Sequence[Partition] | None = None,
) -> DiscoveryResult:
    """Complete, minimal set of dependencies holding with support >= tau.

    Antecedents are non-empty attribute sets; the consequent never appears in
    the antecedent.  Output is sorted by antecedent size, then antecedent,
    then consequent index.
    """
    n_attrs = len(relation.schema)
    if n_attrs == 0:
        raise ValueError("relation must have a non-empty schema")
    acc = _Accumulator()
    level: list[LatticeNode] = []
    for a in range(n_attrs):
        if base_partitions is not None:
            full = base_partitions[a]
            part: NodePartition = strip(full) if cfg.stripped else full
        else:
            part = _node_partition(relation, (a,), cfg)
        level.append(LatticeNode((a,), part, set(range(n_attrs))))
    _record_keys(level, acc)
    node_size = 1
    per_level: list[LevelStats] = []
    parents: dict[AttrSet, LatticeNode] = {}
    while level:
        if node_size >= 2:
            started = time.perf_counter()
            acc.candidates_tested = 0
            acc.emitted = 0
            compute_ofds(level, parents, relation, ontology, cfg, acc)
            per_level.append(
                LevelStats(
                    node_size - 1,
                    acc.candidates_tested,
                    acc.emitted,
                    time.perf_counter() - started,
                )
            )
            _record_keys(level, acc)
        if cfg.max_level is not None and node_size > cfg.max_level:
            break
        parents = {node.attrs: node for node in level}
        level = calculate_next_level(level, relation, cfg)
        node_size += 1
    acc.ofds.sort(key=lambda o: (len(o.lhs), o.lhs, o.rhs))
    acc.keys_found.sort(key=lambda k: (len(k), k))
    return DiscoveryResult(acc.ofds, per_level, acc.keys_found)
