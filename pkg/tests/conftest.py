"""Shared fixtures: the worked clinical example and its ontology."""
from __future__ import annotations

from pathlib import Path

import pytest

from ontofd.ontology import Ontology, OntologyClass, load_ontology
from ontofd.relation import load_relation, relation_from_rows

DATA = Path(__file__).parent / "data"

# Column indices of the clinical sample.
ID, CC, CTRY, SYMP, DIAG, MED = range(6)


@pytest.fixture(scope="session")
def clinical():
    return load_relation(DATA / "clinical.csv")


@pytest.fixture(scope="session")
def clinical_ontology():
    return load_ontology(DATA / "clinical_ontology.json")


@pytest.fixture(scope="session")
def pairwise_overlap():
    """Three tuples equal on X whose Y senses overlap pairwise but not jointly."""
    relation = relation_from_rows(
        ["X", "Y"], [("u", "v"), ("u", "w"), ("u", "z")]
    )
    ontology = Ontology(
        [
            OntologyClass("C", frozenset({"v", "z"}), frozenset()),
            OntologyClass("D", frozenset({"v", "w"}), frozenset()),
            OntologyClass("F", frozenset({"w", "z"}), frozenset()),
            OntologyClass("G", frozenset({"z"}), frozenset()),
        ]
    )
    return relation, ontology


@pytest.fixture(scope="session")
def non_transitive():
    """Country / code / symptom rows where dependency chaining breaks down."""
    relation = relation_from_rows(
        ["PID", "CTRY", "CC", "SYMP"],
        [
            ("10", "Canada", "CAD", "fever"),
            ("11", "Canada", "CA", "congestion"),
            ("12", "Canada", "CAD", "pyrexia"),
        ],
    )
    ontology = Ontology(
        [
            OntologyClass("ca_code", frozenset({"CAD", "CA"}), frozenset()),
            OntologyClass("fever", frozenset({"fever", "pyrexia"}), frozenset()),
            OntologyClass("canada", frozenset({"Canada"}), frozenset()),
        ]
    )
    return relation, ontology
