"""Service configuration: one JSON file describes a reproducible run.

Relative paths are resolved against the config file's directory, so a
config can be checked in next to its fixtures and work from any cwd.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .ingest import IngestSource, SourceKind
from .model import CurationConfig


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class AppConfig:
    source: IngestSource
    journal_path: Path
    clickstream_path: Optional[Path] = None
    host: str = "127.0.0.1"
    port: int = 8080
    salt: str = ""
    cors: bool = False
    curation: CurationConfig = field(default_factory=CurationConfig)
    queries_dir: Optional[Path] = None
    auth_token: Optional[str] = None


def _resolve(base: Path, value: str) -> Path:
    path = Path(value)
    return path if path.is_absolute() else base / path


def _parse_listen(value: str) -> tuple[str, int]:
    host, sep, port = value.rpartition(":")
    if not sep or not port.isdigit():
        raise ConfigError(f"listen must be host:port, got {value!r}")
    return host or "127.0.0.1", int(port)


def _parse_source(doc: dict, base: Path) -> IngestSource:
    if not isinstance(doc, dict):
        raise ConfigError("source must be an object")
    if "ntriples" in doc:
        return IngestSource(SourceKind.NTRIPLES_FILE, str(_resolve(base, doc["ntriples"])))
    if "json_dump" in doc:
        return IngestSource(SourceKind.JSON_DUMP_FILE, str(_resolve(base, doc["json_dump"])))
    if "endpoint" in doc:
        cache = doc.get("cache")
        if not cache:
            raise ConfigError("endpoint sources require a cache path")
        return IngestSource(SourceKind.REMOTE_ENDPOINT, doc["endpoint"], str(_resolve(base, cache)))
    raise ConfigError("source needs one of: ntriples, json_dump, endpoint")


def load_app_config(path: Union[str, Path]) -> AppConfig:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config root must be an object")
    base = path.parent

    if "source" not in doc:
        raise ConfigError("config lacks a source")
    source = _parse_source(doc["source"], base)

    clickstream = doc.get("clickstream")
    salt = doc.get("salt", "")
    if clickstream and not salt:
        raise ConfigError("clickstream ingestion requires a salt")

    schema = doc.get("schema", {})
    if not isinstance(schema, dict):
        raise ConfigError("schema must be an object")
    curation_kwargs = {
        key: schema[key]
        for key in (
            "paper_class",
            "comparison_class",
            "contribution_class",
            "template_class",
            "research_field_predicate",
            "traversal_depth_limit",
        )
        if key in schema
    }
    if "entity_url_template" in doc:
        curation_kwargs["entity_url_template"] = doc["entity_url_template"]
    try:
        curation = CurationConfig(**curation_kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad schema config: {exc}") from exc

    host, port = _parse_listen(doc.get("listen", "127.0.0.1:8080"))
    queries_dir = doc.get("queries_dir")
    return AppConfig(
        source=source,
        journal_path=_resolve(base, doc.get("journal", "comments.jsonl")),
        clickstream_path=_resolve(base, clickstream) if clickstream else None,
        host=host,
        port=port,
        salt=salt,
        cors=bool(doc.get("cors", False)),
        curation=curation,
        queries_dir=_resolve(base, queries_dir) if queries_dir else None,
        auth_token=doc.get("auth_token"),
    )
