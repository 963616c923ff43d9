"""Quality KPIs computed over a knowledge-graph snapshot.

Every operation here is a pure function of (snapshot, config, args) and
returns deterministically ordered results: listings are ascending by id,
so repeated calls and shuffled ingest orders produce identical output.

Conventions shared by all KPIs:
  * a label or description that is absent or whitespace-only counts as
    missing -- whitespace strings are themselves curation defects;
  * "resources" means kind=resource entities only; predicates and classes
    have their own dedicated indicators.
"""

from __future__ import annotations

import string
from collections import Counter, deque
from dataclasses import dataclass
from datetime import datetime
from typing import Optional

from .model import (
    CurationConfig,
    EntityId,
    EntityKind,
    KGSnapshot,
    entities_of_class,
)

_PUNCT_TABLE = str.maketrans("", "", string.punctuation)


class NotAComparison(Exception):
    def __init__(self, entity_id: EntityId):
        super().__init__(f"{entity_id!r} is not a comparison resource")
        self.entity_id = entity_id


@dataclass(frozen=True)
class DuplicateGroup:
    """Predicates whose labels coincide after normalization."""

    normalized_label: str
    members: tuple[EntityId, ...]
    size: int
    members_without_description: tuple[EntityId, ...]


@dataclass(frozen=True)
class MetricsSummary:
    """One count per KPI; each equals the length of its listing."""

    predicates_without_description: int
    classes_without_description: int
    duplicate_predicate_groups: int
    unused_resources: int
    unlabeled_resources: int
    papers_total: int
    templates_total: int
    built_at: datetime


@dataclass(frozen=True)
class EmptyCellReport:
    """Fill state of a comparison's contribution x property grid."""

    comparison_id: EntityId
    contributions: tuple[EntityId, ...]
    properties: tuple[EntityId, ...]
    empty_cells: tuple[tuple[EntityId, EntityId], ...]
    empty_count: int
    total_cells: int


@dataclass(frozen=True)
class TemplateOverview:
    """All template resources plus a per-month creation histogram."""

    templates: tuple[tuple[EntityId, Optional[str], Optional[datetime]], ...]
    monthly_counts: tuple[tuple[str, int], ...]


def normalize_label(raw: str) -> str:
    """Duplicate-detection key: casefolded, punctuation-free, single-spaced."""
    return " ".join(raw.translate(_PUNCT_TABLE).lower().split())


def _missing(text: Optional[str]) -> bool:
    return text is None or not text.strip()


def predicates_without_description(snapshot: KGSnapshot) -> list[EntityId]:
    return sorted(
        e.id
        for e in snapshot.entities.values()
        if e.kind is EntityKind.PREDICATE and _missing(e.description)
    )


def classes_without_description(snapshot: KGSnapshot) -> list[EntityId]:
    return sorted(
        e.id
        for e in snapshot.entities.values()
        if e.kind is EntityKind.CLASS and _missing(e.description)
    )


def duplicate_predicate_groups(snapshot: KGSnapshot) -> list[DuplicateGroup]:
    """Equivalence classes of predicates under equal normalized labels.

    Unlabeled predicates (and labels that normalize to the empty string)
    are never grouped. Only classes of size >= 2 are duplicates; result
    is ordered by (size asc, normalized label asc).
    """
    by_key: dict[str, list[EntityId]] = {}
    for e in snapshot.entities.values():
        if e.kind is not EntityKind.PREDICATE or e.label is None:
            continue
        key = normalize_label(e.label)
        if not key:
            continue
        by_key.setdefault(key, []).append(e.id)

    groups = []
    for key, ids in by_key.items():
        if len(ids) < 2:
            continue
        members = tuple(sorted(ids))
        undescribed = tuple(
            m for m in members if _missing(snapshot.entities[m].description)
        )
        groups.append(
            DuplicateGroup(
                normalized_label=key,
                members=members,
                size=len(members),
                members_without_description=undescribed,
            )
        )
    groups.sort(key=lambda g: (g.size, g.normalized_label))
    return groups


def task1_candidate(
    snapshot: KGSnapshot,
) -> Optional[tuple[EntityId, DuplicateGroup]]:
    """The undescribed predicate in the smallest duplicate group.

    Among groups that contain at least one member lacking a description,
    pick the smallest (ties: smallest normalized label), then that
    group's lexicographically smallest undescribed member.
    """
    candidates = [
        g for g in duplicate_predicate_groups(snapshot) if g.members_without_description
    ]
    if not candidates:
        return None
    best = min(candidates, key=lambda g: (g.size, g.normalized_label))
    return best.members_without_description[0], best


def unused_resources(snapshot: KGSnapshot) -> list[EntityId]:
    """Resources that occur in no statement, neither as subject nor object."""
    return sorted(
        e.id
        for e in snapshot.entities.values()
        if e.kind is EntityKind.RESOURCE
        and e.id not in snapshot.index_by_subject
        and e.id not in snapshot.index_by_object
    )


def unlabeled_resources(snapshot: KGSnapshot) -> list[EntityId]:
    return sorted(
        e.id
        for e in snapshot.entities.values()
        if e.kind is EntityKind.RESOURCE and _missing(e.label)
    )


def papers_in_field(
    snapshot: KGSnapshot, config: CurationConfig, field_id: EntityId
) -> tuple[int, list[EntityId]]:
    """Papers linked to the given research field via the configured predicate."""
    papers = sorted(
        paper
        for paper in entities_of_class(snapshot, config.paper_class)
        if any(
            s.predicate == config.research_field_predicate and s.object == field_id
            for s in snapshot.index_by_subject.get(paper, ())
        )
    )
    return len(papers), papers


def _reachable_statement_count(
    snapshot: KGSnapshot, start: EntityId, depth_limit: Optional[int]
) -> int:
    """Distinct statements in the subgraph reachable subject->object from start.

    Breadth-first with a visited-node set, so cycles terminate and each
    statement is counted once. With a depth limit, nodes at that distance
    from the start are not expanded further.
    """
    seen_nodes = {start}
    seen_statements: set[EntityId] = set()
    queue = deque([(start, 0)])
    while queue:
        node, depth = queue.popleft()
        if depth_limit is not None and depth >= depth_limit:
            continue
        for stmt in snapshot.index_by_subject.get(node, ()):
            seen_statements.add(stmt.id)
            if stmt.object not in seen_nodes:
                seen_nodes.add(stmt.object)
                queue.append((stmt.object, depth + 1))
    return len(seen_statements)


def statement_count_per_paper(
    snapshot: KGSnapshot, config: CurationConfig
) -> dict[EntityId, int]:
    return {
        paper: _reachable_statement_count(snapshot, paper, config.traversal_depth_limit)
        for paper in sorted(entities_of_class(snapshot, config.paper_class))
    }


def paper_with_fewest_statements(
    snapshot: KGSnapshot, config: CurationConfig
) -> Optional[tuple[EntityId, int]]:
    counts = statement_count_per_paper(snapshot, config)
    if not counts:
        return None
    paper = min(counts, key=lambda p: (counts[p], p))
    return paper, counts[paper]


def comparison_empty_cells(
    snapshot: KGSnapshot, config: CurationConfig, comparison_id: EntityId
) -> EmptyCellReport:
    """Missing values in a comparison: the (contribution, property) grid.

    Contributions are the comparison's statement objects classed as
    contributions; properties are the union of predicates those
    contributions use. A cell is filled iff the contribution has at least
    one statement with that predicate.
    """
    comparison = snapshot.entities.get(comparison_id)
    if (
        comparison is None
        or comparison.kind is not EntityKind.RESOURCE
        or config.comparison_class not in comparison.classes
    ):
        raise NotAComparison(comparison_id)

    contribution_ids = entities_of_class(snapshot, config.contribution_class)
    contributions = sorted(
        {
            s.object
            for s in snapshot.index_by_subject.get(comparison_id, ())
            if s.object in contribution_ids
        }
    )
    properties = sorted(
        {
            s.predicate
            for c in contributions
            for s in snapshot.index_by_subject.get(c, ())
        }
    )
    filled = {
        (c, s.predicate)
        for c in contributions
        for s in snapshot.index_by_subject.get(c, ())
    }
    empty = tuple(
        (c, p) for c in contributions for p in properties if (c, p) not in filled
    )
    return EmptyCellReport(
        comparison_id=comparison_id,
        contributions=tuple(contributions),
        properties=tuple(properties),
        empty_cells=empty,
        empty_count=len(empty),
        total_cells=len(contributions) * len(properties),
    )


def template_overview(snapshot: KGSnapshot, config: CurationConfig) -> TemplateOverview:
    templates = [
        (tid, snapshot.entities[tid].label, snapshot.entities[tid].created_at)
        for tid in sorted(entities_of_class(snapshot, config.template_class))
    ]
    months = Counter(
        f"{created.year:04d}-{created.month:02d}"
        for _, _, created in templates
        if created is not None
    )
    return TemplateOverview(
        templates=tuple(templates),
        monthly_counts=tuple(sorted(months.items())),
    )


def metrics_summary(snapshot: KGSnapshot, config: CurationConfig) -> MetricsSummary:
    return MetricsSummary(
        predicates_without_description=len(predicates_without_description(snapshot)),
        classes_without_description=len(classes_without_description(snapshot)),
        duplicate_predicate_groups=len(duplicate_predicate_groups(snapshot)),
        unused_resources=len(unused_resources(snapshot)),
        unlabeled_resources=len(unlabeled_resources(snapshot)),
        papers_total=len(entities_of_class(snapshot, config.paper_class)),
        templates_total=len(entities_of_class(snapshot, config.template_class)),
        built_at=snapshot.built_at,
    )
