"""Exact and approximate candidate verification."""
from __future__ import annotations

import random
from itertools import combinations

import pytest

from ontofd.ontology import Ontology, OntologyClass
from ontofd.relation import attr_set, partition, relation_from_rows, strip
from ontofd.verify import (
    Inheritance,
    Ofd,
    Synonym,
    support_inheritance,
    support_synonym,
    verify_inheritance,
    verify_synonym,
)

from conftest import CC, CTRY, DIAG, MED, SYMP
from gen import fd_instance, random_instance
from oracle import exhaustive_support, ofd_holds


def stripped(relation, attrs):
    return strip(partition(relation, attr_set(attrs)))


def test_country_code_determines_country(clinical, clinical_ontology):
    out = verify_synonym(clinical, clinical_ontology, stripped(clinical, [CC]), CTRY)
    assert out.holds and out.support == 1.0 and not out.witnesses


def test_pairwise_overlap_is_not_enough(pairwise_overlap):
    relation, ontology = pairwise_overlap
    out = verify_synonym(relation, ontology, stripped(relation, [0]), 1)
    assert not out.holds
    assert out.witnesses[0].values == ("v", "w", "z")


def test_string_equal_classes_always_hold(clinical, clinical_ontology):
    out = verify_synonym(clinical, clinical_ontology, stripped(clinical, [SYMP]), DIAG)
    assert out.holds


def test_inheritance_needs_theta_two(clinical, clinical_ontology):
    part = stripped(clinical, [SYMP, DIAG])
    assert verify_inheritance(clinical, clinical_ontology, part, MED, 2).holds
    failed = verify_inheritance(clinical, clinical_ontology, part, MED, 1)
    assert not failed.holds
    # the nausea/migrane class breaks: tylenol sits two edges below analgesic
    assert failed.witnesses[0].representative == 3
    assert set(failed.witnesses[0].values) == {"analgesic", "tylenol", "acetaminophen"}


def test_non_transitive_triple(non_transitive):
    relation, ontology = non_transitive
    pid, ctry, cc, symp = range(4)
    assert verify_synonym(relation, ontology, stripped(relation, [ctry]), cc).holds
    assert verify_synonym(relation, ontology, stripped(relation, [cc]), symp).holds
    assert not verify_synonym(relation, ontology, stripped(relation, [ctry]), symp).holds


def test_theta_zero_equals_synonym_everywhere():
    for seed in range(30):
        relation, ontology = random_instance(seed)
        n_attrs = len(relation.schema)
        for size in (1, 2):
            for lhs in combinations(range(n_attrs), size):
                for rhs in range(n_attrs):
                    if rhs in lhs:
                        continue
                    part = stripped(relation, lhs)
                    syn = verify_synonym(relation, ontology, part, rhs)
                    inh = verify_inheritance(relation, ontology, part, rhs, 0)
                    assert (syn.holds, syn.support) == (inh.holds, inh.support)
                    s_syn = support_synonym(relation, ontology, part, rhs)
                    s_inh = support_inheritance(relation, ontology, part, rhs, 0)
                    assert s_syn.support == s_inh.support


def test_theta_monotone():
    for seed in range(20):
        relation, ontology = random_instance(seed)
        n_attrs = len(relation.schema)
        for lhs in combinations(range(n_attrs), 1):
            for rhs in range(n_attrs):
                if rhs in lhs:
                    continue
                part = stripped(relation, lhs)
                previous = False
                for theta in range(4):
                    holds = verify_inheritance(relation, ontology, part, rhs, theta).holds
                    assert holds or not previous
                    previous = holds


def test_fd_subsumption():
    for seed in range(50):
        relation, lhs, rhs = fd_instance(seed)
        ontology = Ontology([])
        assert verify_synonym(relation, ontology, stripped(relation, lhs), rhs).holds


def test_support_counts_tuples_not_values(clinical_ontology):
    # 5-tuple class, 4 values under one sense; frozen from the subset oracle.
    relation = relation_from_rows(
        ["k", "v"],
        [("x", "ibuprofen"), ("x", "advil"), ("x", "ibuprofen"),
         ("x", "advil"), ("x", "tylenol")],
    )
    out = support_synonym(relation, clinical_ontology, stripped(relation, [0]), 1)
    assert out.satisfied == 4 and out.support == 0.8
    assert exhaustive_support(relation, clinical_ontology, (0,), 1, Synonym()) == 0.8
    cls = out.classes[0]
    assert cls.sense == "ibuprofen"
    assert cls.members == (0, 1, 2, 3) and cls.others == (4,)


def test_support_of_exact_candidate_is_one(clinical, clinical_ontology):
    out = support_synonym(clinical, clinical_ontology, stripped(clinical, [CC]), CTRY)
    assert out.support == 1.0 and out.satisfied == clinical.n


def test_support_with_corrupted_cell(clinical, clinical_ontology):
    rows = [list(r) for r in clinical.rows]
    rows[4][CTRY] = "Canada"  # t5
    corrupted = relation_from_rows(clinical.schema, rows)
    out = support_synonym(corrupted, clinical_ontology, stripped(corrupted, [CC]), CTRY)
    assert out.satisfied == 6 and out.support == pytest.approx(6 / 7)
    assert exhaustive_support(corrupted, clinical_ontology, (CC,), CTRY, Synonym()) == pytest.approx(6 / 7)


def test_inheritance_support_planted_class(clinical_ontology):
    values = ["ibuprofen"] * 3 + ["naproxen"] * 3 + ["NSAID"] * 2 + ["tylenol", "morphine"]
    relation = relation_from_rows(["k", "v"], [("x", v) for v in values])
    out = support_inheritance(relation, clinical_ontology, stripped(relation, [0]), 1, 1)
    assert out.satisfied == 8 and out.support == 0.8
    assert out.classes[0].sense == "nsaid"
    assert exhaustive_support(
        relation, clinical_ontology, (0,), 1, Inheritance(1)
    ) == pytest.approx(0.8)


def test_support_matches_subset_oracle_on_small_instances():
    for seed in range(8):
        relation, ontology = random_instance(seed + 500, max_rows=9)
        n_attrs = len(relation.schema)
        for size in (1, 2):
            for lhs in combinations(range(n_attrs), size):
                for rhs in range(n_attrs):
                    if rhs in lhs:
                        continue
                    part = stripped(relation, lhs)
                    for kind in (Synonym(), Inheritance(seed % 3)):
                        if isinstance(kind, Synonym):
                            got = support_synonym(relation, ontology, part, rhs).support
                        else:
                            got = support_inheritance(relation, ontology, part, rhs, kind.theta).support
                        assert got == pytest.approx(
                            exhaustive_support(relation, ontology, lhs, rhs, kind)
                        )


def test_singletons_never_violate_and_count_toward_support():
    ontology = Ontology([])
    relation = relation_from_rows(
        ["k", "v"], [("a", "1"), ("b", "2"), ("c", "3"), ("d", "4")]
    )
    part = stripped(relation, [0])
    assert part.classes == ()
    out = verify_synonym(relation, ontology, part, 1)
    assert out.holds and out.support == 1.0
    sup = support_synonym(relation, ontology, part, 1)
    assert sup.satisfied == 4


def test_majority_partitions_class_and_tiebreak():
    ontology = Ontology([
        OntologyClass("sa", frozenset({"x", "y"}), frozenset()),
        OntologyClass("sb", frozenset({"x", "y"}), frozenset()),
    ])
    relation = relation_from_rows(["k", "v"], [("g", "x"), ("g", "y"), ("g", "z")])
    out = support_synonym(relation, ontology, stripped(relation, [0]), 1)
    cls = out.classes[0]
    assert cls.sense == "sa"  # sa and sb tie at 2, smallest id wins
    assert set(cls.members) | set(cls.others) == {0, 1, 2}
    assert not set(cls.members) & set(cls.others)


def test_exact_check_uses_distinct_values(clinical_ontology):
    # two tuples share one value, a third carries a sense-mate: intersection
    # runs over distinct values, so repeats cannot mask a conflict
    relation = relation_from_rows(
        ["k", "v"], [("g", "ibuprofen"), ("g", "ibuprofen"), ("g", "morphine")]
    )
    out = verify_synonym(relation, clinical_ontology, stripped(relation, [0]), 1)
    assert not out.holds
    assert out.witnesses[0].values == ("ibuprofen", "morphine")


def test_verification_matches_definition_oracle():
    for seed in range(40):
        relation, ontology = random_instance(seed)
        n_attrs = len(relation.schema)
        kind = Synonym() if seed % 2 == 0 else Inheritance(seed % 3)
        for size in (1, 2):
            for lhs in combinations(range(n_attrs), size):
                for rhs in range(n_attrs):
                    if rhs in lhs:
                        continue
                    part = stripped(relation, lhs)
                    if isinstance(kind, Synonym):
                        got = verify_synonym(relation, ontology, part, rhs).holds
                    else:
                        got = verify_inheritance(relation, ontology, part, rhs, kind.theta).holds
                    assert got == ofd_holds(relation, ontology, lhs, rhs, kind)


def test_rejects_rhs_inside_antecedent(clinical, clinical_ontology):
    with pytest.raises(ValueError):
        verify_synonym(clinical, clinical_ontology, stripped(clinical, [CC]), CC)
    with pytest.raises(ValueError):
        Ofd((CC,), CC, Synonym())


def test_fast_path_flag_changes_nothing():
    for seed in range(15):
        relation, ontology = random_instance(seed)
        n_attrs = len(relation.schema)
        for lhs in combinations(range(n_attrs), 1):
            for rhs in range(n_attrs):
                if rhs in lhs:
                    continue
                part = stripped(relation, lhs)
                fast = verify_synonym(relation, ontology, part, rhs)
                slow = verify_synonym(relation, ontology, part, rhs, equal_fast_path=False)
                assert (fast.holds, fast.support) == (slow.holds, slow.support)
                f = support_synonym(relation, ontology, part, rhs)
                s = support_synonym(relation, ontology, part, rhs, equal_fast_path=False)
                assert (f.support, f.classes) == (s.support, s.classes)
