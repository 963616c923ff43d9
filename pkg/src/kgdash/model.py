"""Domain model for the curated knowledge graph.

Entities and statements are loaded once and frozen into an indexed
snapshot. Every KPI is a pure function of a snapshot, so snapshots are
immutable after construction and safe to share across threads; refreshing
the data means building a new snapshot and swapping the handle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Iterable, Optional

EntityId = str


class EntityKind(str, Enum):
    RESOURCE = "resource"
    PREDICATE = "predicate"
    CLASS = "class"
    LITERAL = "literal"


class ModelError(Exception):
    """Base class for snapshot construction failures."""


class DuplicateId(ModelError):
    def __init__(self, entity_id: EntityId, what: str = "entity"):
        super().__init__(f"duplicate {what} id: {entity_id!r}")
        self.entity_id = entity_id


class DanglingReference(ModelError):
    def __init__(self, referrer: EntityId, missing: EntityId):
        super().__init__(f"{referrer!r} references unknown id {missing!r}")
        self.referrer = referrer
        self.missing = missing


class InvalidEntity(ModelError):
    def __init__(self, entity_id: EntityId, reason: str):
        super().__init__(f"invalid entity {entity_id!r}: {reason}")
        self.entity_id = entity_id


class InvalidStatement(ModelError):
    def __init__(self, statement_id: EntityId, reason: str):
        super().__init__(f"invalid statement {statement_id!r}: {reason}")
        self.statement_id = statement_id


@dataclass(frozen=True)
class Entity:
    """A graph node: resource, predicate, class, or literal value."""

    id: EntityId
    kind: EntityKind
    label: Optional[str] = None
    description: Optional[str] = None
    classes: frozenset[EntityId] = frozenset()
    created_at: Optional[datetime] = None


@dataclass(frozen=True)
class Statement:
    """A directed labeled edge (subject, predicate, object)."""

    id: EntityId
    subject: EntityId
    predicate: EntityId
    object: EntityId
    created_at: Optional[datetime] = None


@dataclass(frozen=True)
class CurationConfig:
    """Schema hooks that adapt the KPIs to a concrete graph.

    The class ids and the research-field predicate are not hardcoded in
    the metrics because equivalent concepts carry different ids across
    graphs; deployments override them in the service config.
    """

    paper_class: EntityId = "Paper"
    comparison_class: EntityId = "Comparison"
    contribution_class: EntityId = "Contribution"
    template_class: EntityId = "Template"
    research_field_predicate: EntityId = "P30"
    entity_url_template: str = "https://example.org/entity/{id}"
    traversal_depth_limit: Optional[int] = None

    def __post_init__(self) -> None:
        if self.entity_url_template.count("{id}") != 1:
            raise ValueError("entity_url_template must contain '{id}' exactly once")
        if self.traversal_depth_limit is not None and self.traversal_depth_limit < 1:
            raise ValueError("traversal_depth_limit must be positive")

    def entity_url(self, entity_id: EntityId) -> str:
        return self.entity_url_template.replace("{id}", entity_id)


@dataclass(frozen=True)
class KGSnapshot:
    """Immutable, indexed view of all entities and statements.

    The indexes are exhaustive: every statement sits in exactly one
    subject bucket and one object bucket. Do not mutate the contained
    dicts; build a new snapshot instead.
    """

    entities: dict[EntityId, Entity]
    statements: tuple[Statement, ...]
    index_by_subject: dict[EntityId, list[Statement]]
    index_by_object: dict[EntityId, list[Statement]]
    index_by_class: dict[EntityId, set[EntityId]]
    built_at: datetime = field(default_factory=lambda: datetime.now(timezone.utc))

    def entity(self, entity_id: EntityId) -> Optional[Entity]:
        return self.entities.get(entity_id)

    def label_of(self, entity_id: EntityId) -> Optional[str]:
        ent = self.entities.get(entity_id)
        return ent.label if ent is not None else None


def _validate_entity(entity: Entity) -> None:
    if not entity.id or any(ch.isspace() for ch in entity.id):
        raise InvalidEntity(entity.id, "id must be a non-empty token without whitespace")
    if entity.kind is EntityKind.LITERAL and entity.classes:
        raise InvalidEntity(entity.id, "literal entities carry no class memberships")


def build_snapshot(
    entities: Iterable[Entity],
    statements: Iterable[Statement],
    built_at: Optional[datetime] = None,
) -> KGSnapshot:
    """Validate and index the graph; raises on duplicates and dangling refs.

    Input order never influences metric results: list positions are only
    reflected in index bucket order, and every metric sorts its output.
    """
    entity_map: dict[EntityId, Entity] = {}
    for entity in entities:
        _validate_entity(entity)
        if entity.id in entity_map:
            raise DuplicateId(entity.id, "entity")
        entity_map[entity.id] = entity

    index_by_class: dict[EntityId, set[EntityId]] = {}
    for entity in entity_map.values():
        for class_id in entity.classes:
            target = entity_map.get(class_id)
            if target is None:
                raise DanglingReference(entity.id, class_id)
            if target.kind is not EntityKind.CLASS:
                raise InvalidEntity(entity.id, f"class membership {class_id!r} is not a class")
            index_by_class.setdefault(class_id, set()).add(entity.id)

    statement_list: list[Statement] = []
    statement_ids: set[EntityId] = set()
    index_by_subject: dict[EntityId, list[Statement]] = {}
    index_by_object: dict[EntityId, list[Statement]] = {}
    for statement in statements:
        if not statement.id or any(ch.isspace() for ch in statement.id):
            raise InvalidStatement(statement.id, "id must be a non-empty token without whitespace")
        if statement.id in statement_ids:
            raise DuplicateId(statement.id, "statement")
        for ref in (statement.subject, statement.predicate, statement.object):
            if ref not in entity_map:
                raise DanglingReference(statement.id, ref)
        if entity_map[statement.subject].kind is not EntityKind.RESOURCE:
            raise InvalidStatement(statement.id, f"subject {statement.subject!r} is not a resource")
        if entity_map[statement.predicate].kind is not EntityKind.PREDICATE:
            raise InvalidStatement(
                statement.id, f"predicate {statement.predicate!r} is not a predicate"
            )
        statement_ids.add(statement.id)
        statement_list.append(statement)
        index_by_subject.setdefault(statement.subject, []).append(statement)
        index_by_object.setdefault(statement.object, []).append(statement)

    return KGSnapshot(
        entities=entity_map,
        statements=tuple(statement_list),
        index_by_subject=index_by_subject,
        index_by_object=index_by_object,
        index_by_class=index_by_class,
        built_at=built_at if built_at is not None else datetime.now(timezone.utc),
    )


def entities_of_class(snapshot: KGSnapshot, class_id: EntityId) -> set[EntityId]:
    """Ids of all entities whose class memberships include ``class_id``."""
    return set(snapshot.index_by_class.get(class_id, ()))


__all__ = [
    "EntityId",
    "EntityKind",
    "Entity",
    "Statement",
    "CurationConfig",
    "KGSnapshot",
    "ModelError",
    "DuplicateId",
    "DanglingReference",
    "InvalidEntity",
    "InvalidStatement",
    "build_snapshot",
    "entities_of_class",
]
