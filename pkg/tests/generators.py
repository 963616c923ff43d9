"""Seeded random generators for property-style tests.

Generated graphs are structurally valid by construction (subjects are
resources, predicates are predicates, no dangling references) but messy
in every way the KPIs care about: duplicate-ish labels, whitespace-only
text, missing descriptions, unused resources, cycles, and papers,
comparisons, contributions and templates wired with random statements.
"""

from __future__ import annotations

import random
from datetime import date, datetime, timedelta, timezone

from kgdash.model import CurationConfig, Entity, EntityKind, Statement

LABEL_POOL = [
    "has result",
    "Has Result ",
    "has-result",
    "uses method",
    "uses--Method",
    "measures",
    "Measures",
    "evaluates",
    "compares with",
    "  compares   with ",
    "employs",
    "",
    "   ",
    None,
]

DESCRIPTION_POOL = [None, "", "   ", "a described thing", "another description"]

CORE_CLASSES = ["Paper", "Comparison", "Contribution", "Template", "ResearchField"]

PAGE_POOL = [
    "/home",
    "/papers",
    "/papers/r1",
    "/comparisons",
    "/fields",
    "/about",
    "/search",
    "/templates",
]


def random_graph(
    rng: random.Random, max_entities: int = 200, max_statements: int = 400
) -> tuple[list[Entity], list[Statement], CurationConfig]:
    config = CurationConfig()
    entities: list[Entity] = []
    for class_id in CORE_CLASSES:
        entities.append(
            Entity(class_id, EntityKind.CLASS, label=class_id, description=rng.choice(DESCRIPTION_POOL))
        )
    n_extra_classes = rng.randint(0, 3)
    for i in range(n_extra_classes):
        entities.append(
            Entity(f"C{i + 1}", EntityKind.CLASS, label=f"class {i}", description=rng.choice(DESCRIPTION_POOL))
        )
    class_ids = [e.id for e in entities]

    n_predicates = rng.randint(0, 14)
    predicates = ["P30"] + [f"P{i + 1}" for i in range(n_predicates)]
    for pid in predicates:
        entities.append(
            Entity(
                pid,
                EntityKind.PREDICATE,
                label=rng.choice(LABEL_POOL),
                description=rng.choice(DESCRIPTION_POOL),
            )
        )

    budget = max_entities - len(entities)
    n_resources = rng.randint(0, max(0, min(budget - 5, 150)))
    epoch = datetime(2023, 1, 1, tzinfo=timezone.utc)
    resources = []
    for i in range(n_resources):
        classes: set[str] = set()
        roll = rng.random()
        if roll < 0.12:
            classes.add(config.paper_class)
        elif roll < 0.20:
            classes.add(config.contribution_class)
        elif roll < 0.24:
            classes.add(config.comparison_class)
        elif roll < 0.32:
            classes.add(config.template_class)
        elif roll < 0.38:
            classes.add("ResearchField")
        if rng.random() < 0.1:
            classes.add(rng.choice(class_ids))
        created = (
            epoch + timedelta(days=rng.randint(0, 700), seconds=rng.randint(0, 86399))
            if rng.random() < 0.7
            else None
        )
        resource = Entity(
            f"R{i + 1}",
            EntityKind.RESOURCE,
            label=rng.choice(LABEL_POOL),
            description=rng.choice(DESCRIPTION_POOL),
            classes=frozenset(classes),
            created_at=created,
        )
        resources.append(resource)
        entities.append(resource)

    n_literals = rng.randint(0, 10)
    for i in range(n_literals):
        entities.append(Entity(f"L{i + 1}", EntityKind.LITERAL, label=f"value {i}"))

    statements: list[Statement] = []
    if resources:
        n_statements = rng.randint(0, max_statements)
        all_ids = [e.id for e in entities]
        for i in range(n_statements):
            statements.append(
                Statement(
                    f"S{i + 1}",
                    subject=rng.choice(resources).id,
                    predicate=rng.choice(predicates),
                    object=rng.choice(all_ids),
                )
            )

    rng.shuffle(entities)
    rng.shuffle(statements)
    return entities, statements, config


def random_rows(
    rng: random.Random, max_sessions: int = 50, max_views: int = 20
) -> list[dict[str, str]]:
    """Raw clickstream rows: out-of-order, with query strings and refreshes."""
    start = datetime(2024, 3, 1, tzinfo=timezone.utc)
    rows = []
    for v in range(rng.randint(0, max_sessions)):
        visit_id = f"visit-{v}"
        at = start + timedelta(
            days=rng.randint(0, 13), hours=rng.randint(0, 23), minutes=rng.randint(0, 59)
        )
        for _ in range(rng.randint(1, max_views)):
            page = rng.choice(PAGE_POOL)
            url = f"https://kg.example.org{page}"
            if rng.random() < 0.3:
                url += f"?utm={rng.randint(0, 9)}"
            if rng.random() < 0.1:
                url += "#section"
            rows.append(
                {
                    "visit_id": visit_id,
                    "url": url,
                    "timestamp": at.isoformat().replace("+00:00", "Z"),
                }
            )
            at += timedelta(seconds=rng.randint(1, 300))
    rng.shuffle(rows)
    return rows


def random_range(rng: random.Random) -> tuple[date, date]:
    a = date(2024, 3, 1) + timedelta(days=rng.randint(0, 13))
    b = date(2024, 3, 1) + timedelta(days=rng.randint(0, 13))
    return (a, b) if a <= b else (b, a)
