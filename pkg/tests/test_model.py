from __future__ import annotations

import random

import pytest

from kgdash import metrics
from kgdash.model import (
    CurationConfig,
    DanglingReference,
    DuplicateId,
    Entity,
    EntityKind,
    InvalidEntity,
    InvalidStatement,
    Statement,
    build_snapshot,
    entities_of_class,
)

import oracles
from generators import random_graph


def test_empty_snapshot():
    snap = build_snapshot([], [])
    assert len(snap.entities) == 0
    assert len(snap.statements) == 0
    assert snap.index_by_subject == {}
    assert snap.index_by_object == {}


def test_single_edge_indexes():
    entities = [
        Entity("R1", EntityKind.RESOURCE),
        Entity("P1", EntityKind.PREDICATE),
        Entity("L1", EntityKind.LITERAL, label="x"),
    ]
    statement = Statement("S1", "R1", "P1", "L1")
    snap = build_snapshot(entities, [statement])
    assert snap.index_by_subject["R1"] == [statement]
    assert snap.index_by_object["L1"] == [statement]
    assert "L1" not in snap.index_by_subject


def test_dangling_statement_reference_rejected():
    entities = [Entity("R1", EntityKind.RESOURCE), Entity("P1", EntityKind.PREDICATE)]
    with pytest.raises(DanglingReference) as err:
        build_snapshot(entities, [Statement("S9", "R1", "P1", "R99")])
    assert err.value.referrer == "S9"
    assert err.value.missing == "R99"


def test_dangling_class_membership_rejected():
    with pytest.raises(DanglingReference):
        build_snapshot([Entity("R1", EntityKind.RESOURCE, classes=frozenset({"C9"}))], [])


def test_duplicate_entity_id_rejected():
    with pytest.raises(DuplicateId):
        build_snapshot(
            [Entity("R1", EntityKind.RESOURCE), Entity("R1", EntityKind.RESOURCE)], []
        )


def test_duplicate_statement_id_rejected():
    entities = [
        Entity("R1", EntityKind.RESOURCE),
        Entity("P1", EntityKind.PREDICATE),
    ]
    statements = [Statement("S1", "R1", "P1", "R1"), Statement("S1", "R1", "P1", "R1")]
    with pytest.raises(DuplicateId):
        build_snapshot(entities, statements)


def test_non_resource_subject_rejected():
    entities = [Entity("P1", EntityKind.PREDICATE), Entity("R1", EntityKind.RESOURCE)]
    with pytest.raises(InvalidStatement):
        build_snapshot(entities, [Statement("S1", "P1", "P1", "R1")])


def test_non_predicate_edge_label_rejected():
    entities = [Entity("R1", EntityKind.RESOURCE), Entity("R2", EntityKind.RESOURCE)]
    with pytest.raises(InvalidStatement):
        build_snapshot(entities, [Statement("S1", "R1", "R2", "R1")])


def test_literal_with_classes_rejected():
    entities = [
        Entity("C1", EntityKind.CLASS),
        Entity("L1", EntityKind.LITERAL, label="x", classes=frozenset({"C1"})),
    ]
    with pytest.raises(InvalidEntity):
        build_snapshot(entities, [])


@pytest.mark.parametrize("bad_id", ["", "R 1", "R\t1", "a\n"])
def test_whitespace_ids_rejected(bad_id):
    with pytest.raises(InvalidEntity):
        build_snapshot([Entity(bad_id, EntityKind.RESOURCE)], [])


def test_entities_of_class_direct_lookup():
    entities = [
        Entity("Paper", EntityKind.CLASS),
        Entity("Comparison", EntityKind.CLASS),
        Entity("R1", EntityKind.RESOURCE, classes=frozenset({"Paper"})),
        Entity("R2", EntityKind.RESOURCE, classes=frozenset({"Paper"})),
        Entity("R3", EntityKind.RESOURCE, classes=frozenset({"Comparison"})),
    ]
    snap = build_snapshot(entities, [])
    assert entities_of_class(snap, "Paper") == {"R1", "R2"}
    assert entities_of_class(snap, "Comparison") == {"R3"}
    assert entities_of_class(snap, "NoSuchClass") == set()


def test_entities_of_class_matches_scan_on_random_snapshots():
    rng = random.Random(4821)
    for _ in range(50):
        entities, statements, _ = random_graph(rng, max_entities=500)
        snap = build_snapshot(entities, statements)
        for class_id in ["Paper", "Comparison", "Template", "C1", "absent"]:
            assert entities_of_class(snap, class_id) == oracles.entities_of_class(
                entities, class_id
            )


def test_index_totals_conserve_statement_count():
    rng = random.Random(99)
    for _ in range(25):
        entities, statements, _ = random_graph(rng)
        snap = build_snapshot(entities, statements)
        assert sum(len(v) for v in snap.index_by_subject.values()) == len(snap.statements)
        assert sum(len(v) for v in snap.index_by_object.values()) == len(snap.statements)


def test_permutation_invariance_of_metrics():
    rng = random.Random(7)
    entities, statements, config = random_graph(rng)
    snap_a = build_snapshot(entities, statements)
    shuffled_e, shuffled_s = list(entities), list(statements)
    rng.shuffle(shuffled_e)
    rng.shuffle(shuffled_s)
    snap_b = build_snapshot(shuffled_e, shuffled_s)

    assert metrics.predicates_without_description(snap_a) == metrics.predicates_without_description(snap_b)
    assert metrics.duplicate_predicate_groups(snap_a) == metrics.duplicate_predicate_groups(snap_b)
    assert metrics.unused_resources(snap_a) == metrics.unused_resources(snap_b)
    assert metrics.unlabeled_resources(snap_a) == metrics.unlabeled_resources(snap_b)
    assert metrics.statement_count_per_paper(snap_a, config) == metrics.statement_count_per_paper(snap_b, config)
    summary_a = metrics.metrics_summary(snap_a, config)
    summary_b = metrics.metrics_summary(snap_b, config)
    assert summary_a.predicates_without_description == summary_b.predicates_without_description
    assert summary_a.papers_total == summary_b.papers_total


def test_curation_config_validates_url_template():
    with pytest.raises(ValueError):
        CurationConfig(entity_url_template="https://example.org/no-placeholder")
    with pytest.raises(ValueError):
        CurationConfig(entity_url_template="{id}/{id}")
    config = CurationConfig(entity_url_template="https://kg.example.org/view/{id}")
    assert config.entity_url("R7") == "https://kg.example.org/view/R7"
