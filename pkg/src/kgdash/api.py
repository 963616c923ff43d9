"""HTTP JSON facade over the metrics, visit analytics and comment store.

The API is read-only towards the knowledge graph: the only mutating
endpoints are the two comment endpoints. Requests read whatever snapshot
the handle currently publishes; re-ingestion swaps the handle atomically,
so in-flight requests finish on the snapshot they started with.

Error bodies are always ``{"code", "message"}`` with a fixed code
vocabulary mirroring the module error cases; 4xx are caller faults.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import __version__, clickstream, comments, metrics
from .clickstream import InvalidArg, InvalidRange, SessionSet
from .comments import (
    CommentStatus,
    CommentStore,
    CommentType,
    EmptyAuthor,
    EmptyText,
    TextTooLong,
    UnknownComment,
    UnknownTarget,
)
from .metrics import NotAComparison
from .model import CurationConfig, EntityId, KGSnapshot
from .timefmt import to_iso


class ApiFault(Exception):
    """Request-level fault carrying the wire error contract."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class SnapshotHandle:
    """Atomically swappable reference to the current snapshot."""

    def __init__(self, snapshot: KGSnapshot):
        self._snapshot = snapshot

    @property
    def current(self) -> KGSnapshot:
        return self._snapshot

    def swap(self, snapshot: KGSnapshot) -> None:
        self._snapshot = snapshot


@dataclass
class AppState:
    snapshot_handle: SnapshotHandle
    comment_store: CommentStore
    curation: CurationConfig = field(default_factory=CurationConfig)
    sessions: SessionSet = field(
        default_factory=lambda: SessionSet.from_views({})
    )
    cors: bool = False


class CommentCreate(BaseModel):
    target: str
    type: CommentType
    text: str
    author: str


class CommentPatch(BaseModel):
    status: CommentStatus


def _page(items: list, limit: Optional[int], offset: int) -> list:
    return items[offset : offset + limit] if limit is not None else items[offset:]


def _parse_date(value: Optional[str], name: str) -> Optional[date]:
    if value is None:
        return None
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise ApiFault(422, "invalid_arg", f"{name} must be YYYY-MM-DD, got {value!r}") from None


def _comment_json(c: comments.Comment) -> dict:
    return {
        "id": c.id,
        "target": c.target,
        "type": c.comment_type.value,
        "text": c.text,
        "author": c.author,
        "created_at": to_iso(c.created_at),
        "status": c.status.value,
    }


def create_app(state: AppState) -> FastAPI:
    app = FastAPI(title="kgdash", version=__version__)
    if state.cors:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=["*"],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    def snapshot() -> KGSnapshot:
        return state.snapshot_handle.current

    def entity_item(entity_id: EntityId) -> dict:
        return {
            "id": entity_id,
            "label": snapshot().label_of(entity_id),
            "url": state.curation.entity_url(entity_id),
        }

    def listing(ids: list[EntityId], limit: Optional[int], offset: int) -> dict:
        return {
            "total": len(ids),
            "items": [entity_item(i) for i in _page(ids, limit, offset)],
        }

    def sessions_in_range(from_: Optional[str], to: Optional[str]) -> SessionSet:
        start = _parse_date(from_, "from")
        end = _parse_date(to, "to")
        if start is None and end is None:
            return state.sessions
        covered = state.sessions.date_range or (date.min, date.max)
        return clickstream.filter_by_date(
            state.sessions, start or covered[0], end or covered[1]
        )

    def group_json(group: metrics.DuplicateGroup) -> dict:
        return {
            "normalized_label": group.normalized_label,
            "size": group.size,
            "members": list(group.members),
            "member_labels": [snapshot().label_of(m) for m in group.members],
            "member_urls": [state.curation.entity_url(m) for m in group.members],
            "members_without_description": list(group.members_without_description),
        }

    @app.exception_handler(ApiFault)
    async def fault_handler(request: Request, exc: ApiFault) -> JSONResponse:
        return JSONResponse({"code": exc.code, "message": exc.message}, exc.status)

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse({"code": "invalid_arg", "message": str(exc.errors())}, 422)

    _DOMAIN_FAULTS = {
        NotAComparison: (404, "not_a_comparison"),
        UnknownTarget: (404, "unknown_target"),
        UnknownComment: (404, "unknown_comment"),
        EmptyText: (422, "empty_text"),
        EmptyAuthor: (422, "empty_author"),
        TextTooLong: (422, "text_too_long"),
        InvalidArg: (422, "invalid_arg"),
        InvalidRange: (422, "invalid_range"),
    }
    for exc_type, (status, code) in _DOMAIN_FAULTS.items():

        def make_handler(status: int = status, code: str = code):
            async def handler(request: Request, exc: Exception) -> JSONResponse:
                return JSONResponse({"code": code, "message": str(exc)}, status)

            return handler

        app.add_exception_handler(exc_type, make_handler())

    @app.get("/api/health")
    def health() -> dict:
        snap = snapshot()
        return {
            "status": "ok",
            "service": "kgdash",
            "version": __version__,
            "snapshot_built_at": to_iso(snap.built_at),
            "entities": len(snap.entities),
            "statements": len(snap.statements),
            "sessions": len(state.sessions.sessions),
        }

    @app.get("/api/metrics/summary")
    def summary() -> dict:
        s = metrics.metrics_summary(snapshot(), state.curation)
        return {
            "predicates_without_description": s.predicates_without_description,
            "classes_without_description": s.classes_without_description,
            "duplicate_predicate_groups": s.duplicate_predicate_groups,
            "unused_resources": s.unused_resources,
            "unlabeled_resources": s.unlabeled_resources,
            "papers_total": s.papers_total,
            "templates_total": s.templates_total,
            "open_comments": len(state.comment_store.list(status=CommentStatus.OPEN)),
            "built_at": to_iso(s.built_at),
        }

    @app.get("/api/predicates/undescribed")
    def predicates_undescribed(
        limit: Optional[int] = Query(None, ge=0), offset: int = Query(0, ge=0)
    ) -> dict:
        return listing(metrics.predicates_without_description(snapshot()), limit, offset)

    @app.get("/api/classes/undescribed")
    def classes_undescribed(
        limit: Optional[int] = Query(None, ge=0), offset: int = Query(0, ge=0)
    ) -> dict:
        return listing(metrics.classes_without_description(snapshot()), limit, offset)

    @app.get("/api/resources/unused")
    def resources_unused(
        limit: Optional[int] = Query(None, ge=0), offset: int = Query(0, ge=0)
    ) -> dict:
        return listing(metrics.unused_resources(snapshot()), limit, offset)

    @app.get("/api/resources/unlabeled")
    def resources_unlabeled(
        limit: Optional[int] = Query(None, ge=0), offset: int = Query(0, ge=0)
    ) -> dict:
        return listing(metrics.unlabeled_resources(snapshot()), limit, offset)

    @app.get("/api/predicates/duplicates")
    def predicate_duplicates(
        limit: Optional[int] = Query(None, ge=0), offset: int = Query(0, ge=0)
    ) -> dict:
        groups = metrics.duplicate_predicate_groups(snapshot())
        return {
            "total": len(groups),
            "items": [group_json(g) for g in _page(groups, limit, offset)],
        }

    @app.get("/api/predicates/duplicates/task1")
    def duplicates_task1() -> Optional[dict]:
        found = metrics.task1_candidate(snapshot())
        if found is None:
            return None
        candidate, group = found
        return {"candidate": entity_item(candidate), "group": group_json(group)}

    @app.get("/api/fields/{field_id}/papers")
    def field_papers(
        field_id: str,
        limit: Optional[int] = Query(None, ge=0),
        offset: int = Query(0, ge=0),
    ) -> dict:
        count, papers = metrics.papers_in_field(snapshot(), state.curation, field_id)
        return {
            "field": field_id,
            "count": count,
            "total": count,
            "items": [entity_item(p) for p in _page(papers, limit, offset)],
        }

    @app.get("/api/papers/statement-counts")
    def paper_statement_counts(
        order: str = Query("asc"),
        limit: Optional[int] = Query(None, ge=0),
        offset: int = Query(0, ge=0),
    ) -> dict:
        if order not in ("asc", "desc"):
            raise ApiFault(422, "invalid_arg", f"order must be asc or desc, got {order!r}")
        counts = metrics.statement_count_per_paper(snapshot(), state.curation)
        ranked = sorted(
            counts.items(), key=lambda kv: (kv[1] if order == "asc" else -kv[1], kv[0])
        )
        return {
            "total": len(ranked),
            "items": [
                {**entity_item(paper), "statements": n}
                for paper, n in _page(ranked, limit, offset)
            ],
        }

    @app.get("/api/papers/fewest")
    def paper_fewest() -> Optional[dict]:
        found = metrics.paper_with_fewest_statements(snapshot(), state.curation)
        if found is None:
            return None
        paper, count = found
        return {**entity_item(paper), "statements": count}

    @app.get("/api/comparisons/{comparison_id}/empty-cells")
    def comparison_report(comparison_id: str) -> dict:
        report = metrics.comparison_empty_cells(snapshot(), state.curation, comparison_id)
        labels = {
            i: snapshot().label_of(i)
            for i in (*report.contributions, *report.properties)
        }
        return {
            "comparison_id": report.comparison_id,
            "contributions": list(report.contributions),
            "properties": list(report.properties),
            "empty_cells": [list(cell) for cell in report.empty_cells],
            "empty_count": report.empty_count,
            "total_cells": report.total_cells,
            "labels": labels,
        }

    @app.get("/api/templates/overview")
    def templates_overview() -> dict:
        overview = metrics.template_overview(snapshot(), state.curation)
        return {
            "templates": [
                {
                    "id": tid,
                    "label": label,
                    "created_at": to_iso(created) if created else None,
                }
                for tid, label, created in overview.templates
            ],
            "monthly_counts": [
                {"month": month, "count": count}
                for month, count in overview.monthly_counts
            ],
        }

    @app.get("/api/visits/graph")
    def visits_graph(
        from_: Optional[str] = Query(None, alias="from"), to: Optional[str] = Query(None)
    ) -> dict:
        graph = clickstream.build_transition_graph(sessions_in_range(from_, to))
        return {
            "nodes": sorted(graph.nodes),
            "edges": [
                {"from": a, "to": b, "count": graph.edges[a, b]}
                for a, b in sorted(graph.edges)
            ],
        }

    @app.get("/api/visits/top-edge")
    def visits_top_edge(
        from_: Optional[str] = Query(None, alias="from"), to: Optional[str] = Query(None)
    ) -> Optional[dict]:
        graph = clickstream.build_transition_graph(sessions_in_range(from_, to))
        top = clickstream.top_transition(graph)
        if top is None:
            return None
        (source, target), count = top
        return {"from": source, "to": target, "count": count}

    @app.get("/api/visits/next")
    def visits_next(
        node: str,
        from_: Optional[str] = Query(None, alias="from"),
        to: Optional[str] = Query(None),
    ) -> dict:
        graph = clickstream.build_transition_graph(sessions_in_range(from_, to))
        return {
            "node": node,
            "next": [
                {"page": page, "count": count}
                for page, count in clickstream.next_step_distribution(graph, node)
            ],
        }

    @app.get("/api/visits/paths")
    def visits_paths(
        min_len: int,
        top_k: int = Query(1),
        from_: Optional[str] = Query(None, alias="from"),
        to: Optional[str] = Query(None),
        limit: Optional[int] = Query(None, ge=0),
        offset: int = Query(0, ge=0),
    ) -> dict:
        results = clickstream.frequent_paths(sessions_in_range(from_, to), min_len, top_k)
        return {
            "total": len(results),
            "items": [
                {"path": list(r.path), "occurrences": r.occurrences}
                for r in _page(results, limit, offset)
            ],
        }

    @app.post("/api/comments", status_code=201)
    def comment_create(body: CommentCreate) -> dict:
        comment = state.comment_store.create(
            target=body.target,
            comment_type=body.type,
            text=body.text,
            author=body.author,
            known_targets=snapshot().entities,
        )
        return _comment_json(comment)

    @app.get("/api/comments")
    def comment_list(
        target: Optional[str] = Query(None),
        status: Optional[CommentStatus] = Query(None),
        type: Optional[CommentType] = Query(None),
        limit: Optional[int] = Query(None, ge=0),
        offset: int = Query(0, ge=0),
    ) -> dict:
        found = state.comment_store.list(target=target, status=status, comment_type=type)
        return {
            "total": len(found),
            "items": [_comment_json(c) for c in _page(found, limit, offset)],
        }

    @app.patch("/api/comments/{comment_id}")
    def comment_patch(comment_id: int, body: CommentPatch) -> dict:
        return _comment_json(state.comment_store.set_status(comment_id, body.status))

    return app


def serve(state: AppState, host: str, port: int) -> None:
    """Run the service until terminated; raises on bind failure."""
    import uvicorn

    uvicorn.run(create_app(state), host=host, port=port, log_level="info")
