"""Ontology store: sense classes, synonym sets, and the is-a hierarchy.

The ontology maps surface strings to the classes (senses) that list them as
synonyms, and answers upward is-a reachability queries with minimal edge
distances.  Values that do not appear in any synonym set resolve to a unique
implicit class derived from the string itself, so plain string equality is
always a degenerate case of sense agreement.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Mapping

ClassId = str

# Prefix for implicit (out-of-vocabulary) class ids.  Real class ids come from
# user documents and will not normally contain a NUL byte.
_IMPLICIT = "\x00"


class OntologyError(ValueError):
    """Raised when an ontology document is malformed."""


@dataclass(frozen=True)
class OntologyClass:
    """One sense: an id, its synonym strings, and is-a parent links."""

    id: ClassId
    synonyms: frozenset[str]
    parents: frozenset[ClassId]


def implicit_class_id(value: str) -> ClassId:
    return _IMPLICIT + value


def is_implicit(class_id: ClassId) -> bool:
    return class_id.startswith(_IMPLICIT)


def display_label(class_id: ClassId) -> str:
    """Human-readable form of a class id (implicit ids show their value)."""
    return class_id[len(_IMPLICIT):] if is_implicit(class_id) else class_id


class Ontology:
    """Immutable collection of sense classes with a value -> senses index.

    All queries are read-only after construction, so an instance may be
    shared freely across threads.
    """

    def __init__(self, classes: Iterable[OntologyClass], *, case_insensitive: bool = False):
        self.case_insensitive = case_insensitive
        self._classes: dict[ClassId, OntologyClass] = {}
        for cls in classes:
            if cls.id in self._classes:
                raise OntologyError(f"duplicate class id {cls.id!r}")
            if not cls.synonyms:
                raise OntologyError(f"class {cls.id!r} has an empty synonym list")
            if cls.id in cls.parents:
                raise OntologyError(f"class {cls.id!r} lists itself as a parent")
            self._classes[cls.id] = cls
        for cls in self._classes.values():
            for parent in cls.parents:
                if parent not in self._classes:
                    raise OntologyError(
                        f"class {cls.id!r} references unknown parent {parent!r}"
                    )
        self._check_acyclic()
        self._value_index: dict[str, frozenset[ClassId]] = {}
        index: dict[str, set[ClassId]] = {}
        for cls in self._classes.values():
            for synonym in cls.synonyms:
                index.setdefault(self.normalize(synonym), set()).add(cls.id)
        self._value_index = {value: frozenset(ids) for value, ids in index.items()}
        self._closure_cache: dict[ClassId, dict[ClassId, int]] = {}
        self._theta_cache: dict[tuple[str, int], frozenset[ClassId]] = {}

    def _check_acyclic(self) -> None:
        # Iterative three-color DFS over parent edges.
        state: dict[ClassId, int] = {}  # 1 = on stack, 2 = done
        for root in self._classes:
            if state.get(root):
                continue
            stack: list[tuple[ClassId, Iterable[ClassId]]] = [
                (root, iter(self._classes[root].parents))
            ]
            state[root] = 1
            while stack:
                node, parents = stack[-1]
                advanced = False
                for parent in parents:
                    mark = state.get(parent)
                    if mark == 1:
                        raise OntologyError(
                            f"cycle in is-a edges involving {parent!r}"
                        )
                    if mark is None:
                        state[parent] = 1
                        stack.append((parent, iter(self._classes[parent].parents)))
                        advanced = True
                        break
                if not advanced:
                    state[node] = 2
                    stack.pop()

    def normalize(self, value: str) -> str:
        return value.casefold() if self.case_insensitive else value

    def __len__(self) -> int:
        return len(self._classes)

    def __contains__(self, class_id: ClassId) -> bool:
        return class_id in self._classes

    @property
    def classes(self) -> Mapping[ClassId, OntologyClass]:
        return self._classes

    @property
    def value_index(self) -> Mapping[str, frozenset[ClassId]]:
        return self._value_index

    def synonyms_of(self, class_id: ClassId) -> frozenset[str]:
        if is_implicit(class_id):
            return frozenset({display_label(class_id)})
        return self._classes[class_id].synonyms

    def names(self, value: str) -> frozenset[ClassId]:
        """Senses of a surface string; unknown strings get an implicit sense."""
        normalized = self.normalize(value)
        known = self._value_index.get(normalized)
        if known is not None:
            return known
        return frozenset({implicit_class_id(normalized)})

    def ancestor_closure(self, class_id: ClassId) -> dict[ClassId, int]:
        """All classes reachable upward from ``class_id`` with minimal distance.

        The class itself is included at distance 0.  Distances are minimal
        over all is-a paths, so the result is well defined on DAGs.
        """
        if is_implicit(class_id):
            return {class_id: 0}
        if class_id not in self._classes:
            raise OntologyError(f"unknown class id {class_id!r}")
        cached = self._closure_cache.get(class_id)
        if cached is not None:
            return dict(cached)
        distances: dict[ClassId, int] = {class_id: 0}
        queue = deque([class_id])
        while queue:
            current = queue.popleft()
            next_distance = distances[current] + 1
            for parent in self._classes[current].parents:
                if parent not in distances:
                    distances[parent] = next_distance
                    queue.append(parent)
        self._closure_cache[class_id] = distances
        return dict(distances)

    def theta_ancestors(self, value: str, theta: int) -> frozenset[ClassId]:
        """Classes within ``theta`` is-a edges above any sense of ``value``."""
        if theta < 0:
            raise ValueError("theta must be non-negative")
        key = (self.normalize(value), theta)
        cached = self._theta_cache.get(key)
        if cached is not None:
            return cached
        result: set[ClassId] = set()
        for sense in self.names(value):
            for ancestor, distance in self.ancestor_closure(sense).items():
                if distance <= theta:
                    result.add(ancestor)
        frozen = frozenset(result)
        self._theta_cache[key] = frozen
        return frozen


def load_ontology(source: str | Path | IO[str], *, case_insensitive: bool = False) -> Ontology:
    """Load an ontology from a JSON document.

    Expected shape: ``{"classes": [{"id": ..., "synonyms": [...],
    "parents": [...]}, ...]}`` with ``parents`` optional.  Synonym strings are
    trimmed of surrounding whitespace.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as handle:
            document = json.load(handle)
    else:
        document = json.load(source)
    if not isinstance(document, dict) or not isinstance(document.get("classes", []), list):
        raise OntologyError("ontology document must be an object with a 'classes' list")
    classes = []
    for entry in document.get("classes", []):
        if not isinstance(entry, dict) or "id" not in entry:
            raise OntologyError("each class entry must be an object with an 'id'")
        class_id = str(entry["id"])
        synonyms = frozenset(str(s).strip() for s in entry.get("synonyms", []))
        parents = frozenset(str(p) for p in entry.get("parents", []))
        classes.append(OntologyClass(id=class_id, synonyms=synonyms, parents=parents))
    return Ontology(classes, case_insensitive=case_insensitive)
