"""Snapshot loading: triple dumps, JSON dumps, and remote endpoints.

Three routes produce the same (entities, statements) pair:

  * ``parse_ntriples``   -- streaming line parser for ``.nt`` dumps;
  * ``parse_json_dump``  -- the canonical JSON interchange format, which is
    also the cache and snapshot-dump format (one parser, one schema);
  * ``fetch_remote``     -- POSTs the named read-only queries from the query
    library to an HTTP endpoint, materializes the results to the cache
    path, then reads them back through ``parse_json_dump``. With the
    endpoint down, a present cache is served with a staleness warning.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import IO, Iterable, Mapping, Optional, Union

import requests

from .model import Entity, EntityId, EntityKind, Statement

logger = logging.getLogger(__name__)

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
RDFS_COMMENT = "http://www.w3.org/2000/01/rdf-schema#comment"
DCTERMS_DESCRIPTION = "http://purl.org/dc/terms/description"

# Compact <prefix:name> forms are accepted alongside the full IRIs.
_TYPE_IRIS = {RDF_TYPE, "rdf:type"}
_LABEL_IRIS = {RDFS_LABEL, "rdfs:label"}
_DESCRIPTION_IRIS = {DCTERMS_DESCRIPTION, "dcterms:description"}
_COMMENT_IRIS = {RDFS_COMMENT, "rdfs:comment"}

_QUERY_DIR = Path(__file__).parent / "queries"

_LINE_RE = re.compile(r"^<([^<>\s]+)>\s+<([^<>\s]+)>\s+(.+?)\s*\.$")
_OBJ_IRI_RE = re.compile(r"^<([^<>\s]+)>$")
_OBJ_LITERAL_RE = re.compile(
    r'^"((?:[^"\\]|\\.)*)"(?:@[A-Za-z0-9]+(?:-[A-Za-z0-9]+)*|\^\^<[^<>\s]+>)?$'
)
_ESCAPE_RE = re.compile(r"\\(?:u([0-9a-fA-F]{4})|U([0-9a-fA-F]{8})|(.))")
_SIMPLE_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


class IngestError(Exception):
    """Base class for snapshot-loading failures."""


class MalformedLine(IngestError):
    def __init__(self, line_number: int, reason: str):
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


class IdCollision(IngestError):
    def __init__(self, entity_id: EntityId, first: str, second: str):
        super().__init__(
            f"id {entity_id!r} produced by both {first!r} and {second!r}"
        )
        self.entity_id = entity_id


class SchemaViolation(IngestError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class EndpointUnreachable(IngestError):
    pass


class QueryRejected(IngestError):
    def __init__(self, query_name: str, message: str):
        super().__init__(f"query {query_name!r} rejected: {message}")
        self.query_name = query_name


class CacheWriteFailed(IngestError):
    pass


class SourceKind(str, Enum):
    NTRIPLES_FILE = "ntriples_file"
    JSON_DUMP_FILE = "json_dump_file"
    REMOTE_ENDPOINT = "remote_endpoint"


@dataclass(frozen=True)
class IngestSource:
    variant: SourceKind
    location: str
    cache_path: Optional[str] = None

    def __post_init__(self) -> None:
        if self.variant is SourceKind.REMOTE_ENDPOINT and not self.cache_path:
            raise ValueError("remote_endpoint sources require a cache_path")


def _unescape(raw: str, line_number: int) -> str:
    def sub(match: re.Match[str]) -> str:
        u4, u8, ch = match.groups()
        if u4 is not None:
            return chr(int(u4, 16))
        if u8 is not None:
            return chr(int(u8, 16))
        if ch in _SIMPLE_ESCAPES:
            return _SIMPLE_ESCAPES[ch]
        raise MalformedLine(line_number, f"invalid escape sequence \\{ch}")

    return _ESCAPE_RE.sub(sub, raw)


def _shorten(iri: str, line_number: int) -> EntityId:
    short = re.split(r"[/#]", iri)[-1]
    if not short:
        raise MalformedLine(line_number, f"IRI {iri!r} has an empty final segment")
    return short


class _NTriplesState:
    """Accumulates per-id facts while the line stream is consumed."""

    def __init__(self) -> None:
        self.owner: dict[EntityId, str] = {}  # id -> originating IRI / literal marker
        self.labels: dict[EntityId, str] = {}
        self.descriptions: dict[EntityId, str] = {}
        self.comments: dict[EntityId, str] = {}
        self.classes: dict[EntityId, set[EntityId]] = {}
        self.predicate_position: set[EntityId] = set()
        self.type_object: set[EntityId] = set()
        self.mention_order: dict[EntityId, None] = {}
        self.literal_ids: dict[str, EntityId] = {}
        self.statements: list[Statement] = []

    def claim(self, short: EntityId, origin: str) -> EntityId:
        existing = self.owner.get(short)
        if existing is None:
            self.owner[short] = origin
        elif existing != origin:
            raise IdCollision(short, existing, origin)
        self.mention_order.setdefault(short, None)
        return short

    def iri_id(self, iri: str, line_number: int) -> EntityId:
        return self.claim(_shorten(iri, line_number), iri)

    def literal_id(self, value: str) -> EntityId:
        known = self.literal_ids.get(value)
        if known is not None:
            return known
        short = f"L{len(self.literal_ids) + 1}"
        self.claim(short, f"literal:{value}")
        self.literal_ids[value] = short
        return short


def parse_ntriples(
    lines: Iterable[Union[bytes, str]],
) -> tuple[list[Entity], list[Statement]]:
    """Parse UTF-8 N-Triples lines into entities and statements.

    Label, description and type triples fold into entity fields; every
    other triple becomes a statement with a synthesized id S<n> in input
    order. IRIs shorten to their final path segment; literals become
    literal entities deduplicated by value. Aborts on the first bad line.
    """
    state = _NTriplesState()
    line_number = 0
    for raw in lines:
        line_number += 1
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError:
                raise MalformedLine(line_number, "invalid UTF-8") from None
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _LINE_RE.match(line)
        if match is None:
            raise MalformedLine(line_number, "not a <s> <p> <o> . triple")
        subject_iri, predicate_iri, object_token = match.groups()

        literal_match = _OBJ_LITERAL_RE.match(object_token)
        iri_match = _OBJ_IRI_RE.match(object_token)
        if literal_match is None and iri_match is None:
            raise MalformedLine(line_number, f"unparseable object {object_token!r}")

        subject = state.iri_id(subject_iri, line_number)
        if predicate_iri in _LABEL_IRIS or predicate_iri in _DESCRIPTION_IRIS or predicate_iri in _COMMENT_IRIS:
            if literal_match is None:
                raise MalformedLine(line_number, "label/description object must be a literal")
            value = _unescape(literal_match.group(1), line_number)
            if predicate_iri in _LABEL_IRIS:
                state.labels[subject] = value
            elif predicate_iri in _DESCRIPTION_IRIS:
                state.descriptions[subject] = value
            else:
                state.comments[subject] = value
        elif predicate_iri in _TYPE_IRIS:
            if iri_match is None:
                raise MalformedLine(line_number, "type object must be an IRI")
            class_id = state.iri_id(iri_match.group(1), line_number)
            state.type_object.add(class_id)
            state.classes.setdefault(subject, set()).add(class_id)
        else:
            predicate = state.iri_id(predicate_iri, line_number)
            state.predicate_position.add(predicate)
            if iri_match is not None:
                obj = state.iri_id(iri_match.group(1), line_number)
            else:
                obj = state.literal_id(_unescape(literal_match.group(1), line_number))
            state.statements.append(
                Statement(
                    id=f"S{len(state.statements) + 1}",
                    subject=subject,
                    predicate=predicate,
                    object=obj,
                )
            )

    literal_values = {short: value for value, short in state.literal_ids.items()}
    entities: list[Entity] = []
    for entity_id in state.mention_order:
        if entity_id in literal_values:
            kind = EntityKind.LITERAL
            label: Optional[str] = literal_values[entity_id]
        elif entity_id in state.predicate_position:
            kind = EntityKind.PREDICATE
            label = state.labels.get(entity_id)
        elif entity_id in state.type_object:
            kind = EntityKind.CLASS
            label = state.labels.get(entity_id)
        else:
            kind = EntityKind.RESOURCE
            label = state.labels.get(entity_id)
        description = state.descriptions.get(entity_id, state.comments.get(entity_id))
        entities.append(
            Entity(
                id=entity_id,
                kind=kind,
                label=label,
                description=description,
                classes=frozenset(state.classes.get(entity_id, ())),
            )
        )
    return entities, state.statements


def _parse_timestamp(value: str, path: str) -> datetime:
    try:
        ts = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError:
        raise SchemaViolation(path, f"not an ISO-8601 timestamp: {value!r}") from None
    if ts.tzinfo is None:
        return ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _require_str(obj: Mapping, key: str, path: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str) or not value:
        raise SchemaViolation(f"{path}/{key}", "required non-empty string")
    return value


def parse_json_dump(
    source: Union[bytes, str, IO[bytes], IO[str]],
) -> tuple[list[Entity], list[Statement]]:
    """Parse the canonical JSON dump; unknown fields are ignored."""
    if isinstance(source, (bytes, str)):
        text = source.decode("utf-8") if isinstance(source, bytes) else source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaViolation("", "root must be an object")

    raw_entities = doc.get("entities")
    if not isinstance(raw_entities, list):
        raise SchemaViolation("/entities", "required array")
    raw_statements = doc.get("statements")
    if not isinstance(raw_statements, list):
        raise SchemaViolation("/statements", "required array")

    entities: list[Entity] = []
    for i, item in enumerate(raw_entities):
        path = f"/entities/{i}"
        if not isinstance(item, dict):
            raise SchemaViolation(path, "must be an object")
        kind_raw = _require_str(item, "kind", path)
        try:
            kind = EntityKind(kind_raw)
        except ValueError:
            raise SchemaViolation(f"{path}/kind", f"unknown kind {kind_raw!r}") from None
        label = item.get("label")
        if label is not None and not isinstance(label, str):
            raise SchemaViolation(f"{path}/label", "must be a string")
        description = item.get("description")
        if description is not None and not isinstance(description, str):
            raise SchemaViolation(f"{path}/description", "must be a string")
        raw_classes = item.get("classes", [])
        if not isinstance(raw_classes, list) or not all(
            isinstance(c, str) for c in raw_classes
        ):
            raise SchemaViolation(f"{path}/classes", "must be an array of strings")
        created = item.get("created_at")
        entities.append(
            Entity(
                id=_require_str(item, "id", path),
                kind=kind,
                label=label,
                description=description,
                classes=frozenset(raw_classes),
                created_at=_parse_timestamp(created, f"{path}/created_at")
                if isinstance(created, str)
                else None,
            )
        )

    statements: list[Statement] = []
    for i, item in enumerate(raw_statements):
        path = f"/statements/{i}"
        if not isinstance(item, dict):
            raise SchemaViolation(path, "must be an object")
        created = item.get("created_at")
        statements.append(
            Statement(
                id=_require_str(item, "id", path),
                subject=_require_str(item, "subject", path),
                predicate=_require_str(item, "predicate", path),
                object=_require_str(item, "object", path),
                created_at=_parse_timestamp(created, f"{path}/created_at")
                if isinstance(created, str)
                else None,
            )
        )
    return entities, statements


def _format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def dump_to_dict(
    entities: Iterable[Entity], statements: Iterable[Statement]
) -> dict[str, list[dict[str, object]]]:
    """The canonical JSON dump document; absent optionals are omitted."""
    entity_docs: list[dict[str, object]] = []
    for e in entities:
        doc: dict[str, object] = {"id": e.id, "kind": e.kind.value}
        if e.label is not None:
            doc["label"] = e.label
        if e.description is not None:
            doc["description"] = e.description
        if e.classes:
            doc["classes"] = sorted(e.classes)
        if e.created_at is not None:
            doc["created_at"] = _format_timestamp(e.created_at)
        entity_docs.append(doc)
    statement_docs: list[dict[str, object]] = []
    for s in statements:
        doc = {"id": s.id, "subject": s.subject, "predicate": s.predicate, "object": s.object}
        if s.created_at is not None:
            doc["created_at"] = _format_timestamp(s.created_at)
        statement_docs.append(doc)
    return {"entities": entity_docs, "statements": statement_docs}


def write_json_dump(
    entities: Iterable[Entity], statements: Iterable[Statement], path: Union[str, Path]
) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dump_to_dict(entities, statements), fh, ensure_ascii=False, indent=2)
        fh.write("\n")


def load_query_library(directory: Optional[Union[str, Path]] = None) -> dict[str, str]:
    """Named read-only queries, one per ``.sparql`` file in the directory.

    The shipped library covers the KPI inputs (all-entities,
    all-statements); operators point the service at their own directory
    to adapt the queries to another graph without touching code.
    """
    directory = Path(directory) if directory is not None else _QUERY_DIR
    queries: dict[str, str] = {}
    for path in sorted(directory.glob("*.sparql")):
        queries[path.stem] = path.read_text(encoding="utf-8").strip()
    return queries


def fetch_remote(
    source: IngestSource,
    query_set: Optional[Mapping[str, str]] = None,
    auth_token: Optional[str] = None,
    timeout: float = 30.0,
) -> tuple[list[Entity], list[Statement]]:
    """Materialize a snapshot from a remote query endpoint, through the cache.

    Only read queries are issued; the remote store is never modified.
    Every successful fetch rewrites the cache dump, so later offline runs
    (endpoint unreachable) fall back to it with a staleness warning.
    """
    if source.variant is not SourceKind.REMOTE_ENDPOINT:
        raise ValueError("fetch_remote requires a remote_endpoint source")
    queries = dict(query_set) if query_set is not None else load_query_library()
    cache_path = Path(source.cache_path)  # type: ignore[arg-type]  # enforced in __post_init__

    headers = {"Content-Type": "application/sparql-query"}
    if auth_token:
        headers["Authorization"] = f"Bearer {auth_token}"

    merged: dict[str, object] = {"entities": [], "statements": []}
    try:
        for name in sorted(queries):
            response = requests.post(
                source.location, data=queries[name].encode("utf-8"),
                headers=headers, timeout=timeout,
            )
            if response.status_code >= 400:
                raise QueryRejected(name, f"HTTP {response.status_code}: {response.text[:200]}")
            try:
                payload = response.json()
            except ValueError:
                raise QueryRejected(name, "response is not JSON") from None
            if not isinstance(payload, dict):
                raise QueryRejected(name, "response is not a JSON object")
            merged.update(payload)
    except requests.RequestException as exc:
        if cache_path.exists():
            logger.warning(
                "endpoint %s unreachable (%s); serving stale cache %s",
                source.location, exc, cache_path,
            )
            return parse_json_dump(cache_path.read_text(encoding="utf-8"))
        raise EndpointUnreachable(f"{source.location}: {exc}") from exc

    try:
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        with open(cache_path, "w", encoding="utf-8") as fh:
            json.dump(merged, fh, ensure_ascii=False, indent=2)
    except OSError as exc:
        raise CacheWriteFailed(f"cannot write cache {cache_path}: {exc}") from exc
    return parse_json_dump(cache_path.read_text(encoding="utf-8"))


def load_source(
    source: IngestSource,
    query_set: Optional[Mapping[str, str]] = None,
    auth_token: Optional[str] = None,
) -> tuple[list[Entity], list[Statement]]:
    if source.variant is SourceKind.NTRIPLES_FILE:
        with open(source.location, "rb") as fh:
            return parse_ntriples(fh)
    if source.variant is SourceKind.JSON_DUMP_FILE:
        with open(source.location, "rb") as fh:
            return parse_json_dump(fh)
    return fetch_remote(source, query_set=query_set, auth_token=auth_token)
