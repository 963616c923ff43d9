"""Anonymized visitor-path analytics.

Raw analytics exports (visit id, url, timestamp) are reduced at ingest to
what the dashboards actually need: per-session page sequences keyed by a
salted one-way hash of the visit id. Query strings and fragments are
stripped from urls and the raw visit id never survives ingest, so nothing
downstream can be tied back to an individual visitor.
"""

from __future__ import annotations

import csv
import hashlib
import itertools
import json
from collections import Counter
from dataclasses import dataclass
from datetime import date, datetime, timezone
from typing import Iterable, Iterator, Mapping, Optional
from urllib.parse import urlsplit


class ClickstreamError(Exception):
    """Base class for clickstream ingest/query failures."""


class MalformedRow(ClickstreamError):
    def __init__(self, row_number: int, reason: str):
        super().__init__(f"row {row_number}: {reason}")
        self.row_number = row_number
        self.reason = reason


class BadTimestamp(ClickstreamError):
    def __init__(self, row_number: int, value: str):
        super().__init__(f"row {row_number}: unparseable timestamp {value!r}")
        self.row_number = row_number
        self.value = value


class InvalidRange(ClickstreamError):
    pass


class InvalidArg(ClickstreamError):
    pass


@dataclass(frozen=True, slots=True)
class PageView:
    session_key: str
    page: str
    at: datetime


@dataclass(frozen=True)
class SessionSet:
    """Sessionized page views: collapsed sequences plus the raw views.

    ``sessions`` holds the time-ordered page list per session with
    adjacent duplicates (refreshes) collapsed; ``views`` keeps every
    canonicalized view so date filtering can re-derive the sequences.
    """

    sessions: dict[str, list[str]]
    views: dict[str, tuple[PageView, ...]]
    date_range: Optional[tuple[date, date]]

    @classmethod
    def from_views(cls, views_by_key: Mapping[str, Iterable[PageView]]) -> SessionSet:
        views: dict[str, tuple[PageView, ...]] = {}
        sessions: dict[str, list[str]] = {}
        low: Optional[date] = None
        high: Optional[date] = None
        for key, raw in views_by_key.items():
            ordered = tuple(sorted(raw, key=lambda v: v.at))
            if not ordered:
                continue
            views[key] = ordered
            sessions[key] = _collapse(v.page for v in ordered)
            first, last = ordered[0].at.date(), ordered[-1].at.date()
            low = first if low is None or first < low else low
            high = last if high is None or last > high else high
        date_range = (low, high) if low is not None and high is not None else None
        return cls(sessions=sessions, views=views, date_range=date_range)

    def total_views(self) -> int:
        return sum(len(v) for v in self.views.values())


@dataclass(frozen=True)
class TransitionGraph:
    """Directed page-to-page navigation counts."""

    nodes: set[str]
    edges: dict[tuple[str, str], int]


@dataclass(frozen=True)
class PathResult:
    path: tuple[str, ...]
    occurrences: int


def _collapse(pages: Iterable[str]) -> list[str]:
    out: list[str] = []
    for page in pages:
        if not out or out[-1] != page:
            out.append(page)
    return out


def canonical_page(url: str) -> str:
    """Path component only: scheme, host, query and fragment are dropped."""
    path = urlsplit(url.strip()).path
    if not path:
        return "/"
    if not path.startswith("/"):
        path = "/" + path
    return path


def session_key(salt: str, visit_id: str) -> str:
    return hashlib.sha256(f"{salt}:{visit_id}".encode("utf-8")).hexdigest()[:16]


def parse_timestamp(value: str) -> datetime:
    ts = datetime.fromisoformat(value.strip().replace("Z", "+00:00"))
    if ts.tzinfo is None:
        return ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def ingest_clickstream(records: Iterable[Mapping[str, object]], salt: str) -> SessionSet:
    """Group raw rows into anonymized sessions.

    Rows carry visit_id, url and an ISO-8601 timestamp. Views are grouped
    by the salted hash of the visit id, time-sorted, and refresh runs are
    collapsed. Length-1 sessions are kept: they contribute nodes to the
    transition graph even though they produce no edges.
    """
    page_cache: dict[str, str] = {}
    key_cache: dict[str, str] = {}
    grouped: dict[str, list[PageView]] = {}
    for row_number, row in enumerate(records, start=1):
        visit_id = row.get("visit_id")
        url = row.get("url")
        raw_ts = row.get("timestamp")
        if not isinstance(visit_id, str) or not visit_id.strip():
            raise MalformedRow(row_number, "missing or empty visit_id")
        if not isinstance(url, str) or not url.strip():
            raise MalformedRow(row_number, "missing or empty url")
        if not isinstance(raw_ts, str) or not raw_ts.strip():
            raise MalformedRow(row_number, "missing or empty timestamp")
        try:
            at = parse_timestamp(raw_ts)
        except ValueError:
            raise BadTimestamp(row_number, raw_ts) from None
        page = page_cache.get(url)
        if page is None:
            page = page_cache[url] = canonical_page(url)
        key = key_cache.get(visit_id)
        if key is None:
            key = key_cache[visit_id] = session_key(salt, visit_id)
        grouped.setdefault(key, []).append(PageView(key, page, at))
    return SessionSet.from_views(grouped)


def iter_clickstream_rows(stream: Iterable[str]) -> Iterator[dict[str, str]]:
    """Decode a clickstream export: CSV with header, or JSON-lines.

    The format is sniffed from the first non-blank line ('{' means
    JSON-lines). Both formats are consumed line by line; row numbers in
    errors count data rows from 1.
    """
    lines = iter(stream)
    first = ""
    for line in lines:
        if line.strip():
            first = line
            break
    if not first:
        return
    if first.lstrip().startswith("{"):
        row_number = 0
        for line in itertools.chain([first], lines):
            if not line.strip():
                continue
            row_number += 1
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRow(row_number, f"invalid JSON: {exc}") from None
            if not isinstance(record, dict):
                raise MalformedRow(row_number, "JSON line is not an object")
            yield record
    else:
        reader = csv.DictReader(itertools.chain([first], lines))
        fields = reader.fieldnames or []
        missing = {"visit_id", "url", "timestamp"} - set(fields)
        if missing:
            raise MalformedRow(0, f"header lacks columns: {', '.join(sorted(missing))}")
        for row_number, record in enumerate(reader, start=1):
            if None in (record.get("visit_id"), record.get("url"), record.get("timestamp")):
                raise MalformedRow(row_number, "wrong column count")
            yield record


def load_clickstream(path: str, salt: str) -> SessionSet:
    with open(path, "r", encoding="utf-8") as fh:
        return ingest_clickstream(iter_clickstream_rows(fh), salt)


def filter_by_date(sessions: SessionSet, start: date, end: date) -> SessionSet:
    """Sessions restricted to views dated within [start, end] UTC, inclusive."""
    if start > end:
        raise InvalidRange(f"from {start} is after to {end}")
    filtered = {
        key: [v for v in views if start <= v.at.date() <= end]
        for key, views in sessions.views.items()
    }
    return SessionSet.from_views(filtered)


def build_transition_graph(sessions: SessionSet) -> TransitionGraph:
    """Count every adjacent page pair across all collapsed sessions."""
    edges: Counter[tuple[str, str]] = Counter()
    nodes: set[str] = set()
    for pages in sessions.sessions.values():
        nodes.update(pages)
        edges.update(zip(pages, pages[1:]))
    return TransitionGraph(nodes=nodes, edges=dict(edges))


def top_transition(graph: TransitionGraph) -> Optional[tuple[tuple[str, str], int]]:
    """The most-travelled edge; ties resolve to the smallest (from, to)."""
    if not graph.edges:
        return None
    edge = min(graph.edges, key=lambda e: (-graph.edges[e], e))
    return edge, graph.edges[edge]


def next_step_distribution(graph: TransitionGraph, node: str) -> list[tuple[str, int]]:
    """Out-edges of node ranked by count desc, then page asc."""
    outgoing = [
        (target, count) for (source, target), count in graph.edges.items() if source == node
    ]
    outgoing.sort(key=lambda item: (-item[1], item[0]))
    return outgoing


def frequent_paths(sessions: SessionSet, min_len: int, top_k: int) -> list[PathResult]:
    """Most frequent contiguous page sequences of exactly ``min_len`` pages.

    Occurrences overlap within a session (a session [A,B,A,B] counts
    [A,B] twice). With overlap counting no extension of a path can be
    strictly more frequent than the path itself, so the exact-length top
    result is also the top result over all lengths >= min_len.
    """
    if min_len < 2:
        raise InvalidArg(f"min_len must be >= 2, got {min_len}")
    if top_k < 1:
        raise InvalidArg(f"top_k must be >= 1, got {top_k}")
    counts: Counter[tuple[str, ...]] = Counter()
    for pages in sessions.sessions.values():
        for i in range(len(pages) - min_len + 1):
            counts[tuple(pages[i : i + min_len])] += 1
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return [PathResult(path=p, occurrences=n) for p, n in ranked[:top_k]]
