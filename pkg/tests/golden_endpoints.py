"""The pinned endpoint sequence behind the API golden-file checks.

Responses are canonicalized (sorted keys, tight separators) and every
timestamp-valued field is masked before byte comparison, so goldens stay
stable across runs while any other byte of the contract is pinned.
"""

from __future__ import annotations

import json
from typing import Any

TIMESTAMP_FIELDS = {"built_at", "created_at", "snapshot_built_at"}

TASK_RANGE_QUERY = "from=2024-03-02&to=2024-03-08"

GOLDEN_SEQUENCE: list[tuple[str, str, str, dict | None]] = [
    ("health", "GET", "/api/health", None),
    ("metrics_summary", "GET", "/api/metrics/summary", None),
    ("predicates_undescribed", "GET", "/api/predicates/undescribed", None),
    ("predicates_undescribed_paged", "GET", "/api/predicates/undescribed?limit=2&offset=1", None),
    ("classes_undescribed", "GET", "/api/classes/undescribed", None),
    ("resources_unused", "GET", "/api/resources/unused", None),
    ("resources_unlabeled", "GET", "/api/resources/unlabeled", None),
    ("predicates_duplicates", "GET", "/api/predicates/duplicates", None),
    ("predicates_duplicates_task1", "GET", "/api/predicates/duplicates/task1", None),
    ("fields_f1_papers", "GET", "/api/fields/F1/papers", None),
    ("fields_unknown_papers", "GET", "/api/fields/NOPE/papers", None),
    ("papers_statement_counts", "GET", "/api/papers/statement-counts?order=asc", None),
    ("papers_statement_counts_desc", "GET", "/api/papers/statement-counts?order=desc", None),
    ("papers_fewest", "GET", "/api/papers/fewest", None),
    ("comparison_r201_empty_cells", "GET", "/api/comparisons/R201/empty-cells", None),
    ("comparison_unknown_error", "GET", "/api/comparisons/UNKNOWN/empty-cells", None),
    ("templates_overview", "GET", "/api/templates/overview", None),
    ("visits_graph", "GET", "/api/visits/graph", None),
    ("visits_graph_task_range", "GET", f"/api/visits/graph?{TASK_RANGE_QUERY}", None),
    ("visits_top_edge", "GET", "/api/visits/top-edge", None),
    ("visits_top_edge_task_range", "GET", f"/api/visits/top-edge?{TASK_RANGE_QUERY}", None),
    ("visits_next_papers", "GET", f"/api/visits/next?node=/papers&{TASK_RANGE_QUERY}", None),
    ("visits_paths_min3", "GET", "/api/visits/paths?min_len=3&top_k=1", None),
    ("visits_paths_top5", "GET", "/api/visits/paths?min_len=2&top_k=5", None),
    ("visits_paths_invalid", "GET", "/api/visits/paths?min_len=1", None),
    ("comments_empty", "GET", "/api/comments", None),
    (
        "comment_create",
        "POST",
        "/api/comments",
        {"target": "R104", "type": "incomplete", "text": "Only one statement recorded.", "author": "golden"},
    ),
    ("comments_after_create", "GET", "/api/comments", None),
    ("comment_resolve", "PATCH", "/api/comments/1", {"status": "resolved"}),
    ("comments_filter_open", "GET", "/api/comments?status=open", None),
]


def mask_timestamps(value: Any) -> Any:
    if isinstance(value, dict):
        return {
            key: "<timestamp>" if key in TIMESTAMP_FIELDS and item is not None else mask_timestamps(item)
            for key, item in value.items()
        }
    if isinstance(value, list):
        return [mask_timestamps(item) for item in value]
    return value


def canonical(status: int, body: Any) -> str:
    envelope = {"status": status, "body": mask_timestamps(body)}
    return json.dumps(envelope, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def collect_responses(client) -> dict[str, str]:
    """Run the pinned sequence in order; returns name -> canonical bytes."""
    results: dict[str, str] = {}
    for name, method, path, body in GOLDEN_SEQUENCE:
        response = client.request(method, path, json=body) if body is not None else client.request(method, path)
        results[name] = canonical(response.status_code, response.json())
    return results
