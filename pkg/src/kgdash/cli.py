"""Operator entry point: ingest dumps, run the service, emit reports.

Exit codes are a stable contract: 0 success, 1 data/config error,
2 usage error (argparse's own convention).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

from . import api, clickstream, ingest, metrics
from .comments import CommentStore
from .config import ConfigError, load_app_config
from .ingest import IngestError, IngestSource, SourceKind
from .model import CurationConfig, KGSnapshot, ModelError, build_snapshot
from .timefmt import to_iso

logger = logging.getLogger(__name__)

REPORT_LIMIT = 100


def _source_from_args(args: argparse.Namespace) -> IngestSource:
    if args.ntriples:
        return IngestSource(SourceKind.NTRIPLES_FILE, args.ntriples)
    if args.json_dump:
        return IngestSource(SourceKind.JSON_DUMP_FILE, args.json_dump)
    return IngestSource(SourceKind.REMOTE_ENDPOINT, args.endpoint, args.cache)


def cmd_ingest(args: argparse.Namespace) -> int:
    try:
        source = _source_from_args(args)
        entities, statements = ingest.load_source(source)
        build_snapshot(entities, statements)  # validates before anything is written
        if args.out:
            ingest.write_json_dump(entities, statements, args.out)
        print(f"entities: {len(entities)}")
        print(f"statements: {len(statements)}")
        return 0
    except (IngestError, ModelError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _load_state(config: AppConfig) -> api.AppState:
    queries = (
        ingest.load_query_library(config.queries_dir) if config.queries_dir else None
    )
    entities, statements = ingest.load_source(
        config.source, query_set=queries, auth_token=config.auth_token
    )
    snapshot = build_snapshot(entities, statements)
    sessions = (
        clickstream.load_clickstream(str(config.clickstream_path), config.salt)
        if config.clickstream_path
        else clickstream.SessionSet.from_views({})
    )
    store = CommentStore(config.journal_path)
    return api.AppState(
        snapshot_handle=api.SnapshotHandle(snapshot),
        comment_store=store,
        curation=config.curation,
        sessions=sessions,
        cors=config.cors,
    )


def cmd_serve(args: argparse.Namespace) -> int:
    config_path = args.config or os.environ.get("KGDASH_CONFIG")
    if not config_path:
        print("error: no config given (--config or KGDASH_CONFIG)", file=sys.stderr)
        return 1
    try:
        config = load_app_config(config_path)
        if args.listen:
            host, _, port = args.listen.rpartition(":")
            config = replace(config, host=host or config.host, port=int(port))
        if args.clickstream:
            config = replace(config, clickstream_path=Path(args.clickstream))
        state = _load_state(config)
    except (ConfigError, IngestError, ModelError, clickstream.ClickstreamError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        api.serve(state, config.host, config.port)
    except (OSError, SystemExit) as exc:
        print(f"error: cannot serve on {config.host}:{config.port}: {exc}", file=sys.stderr)
        return 1
    finally:
        state.comment_store.close()
    return 0


def build_report(snapshot: KGSnapshot, curation: CurationConfig) -> dict:
    """Full KPI report, every listing truncated to the top entries."""

    def entity_items(ids: list[str]) -> dict:
        return {
            "total": len(ids),
            "items": [
                {"id": i, "label": snapshot.label_of(i)} for i in ids[:REPORT_LIMIT]
            ],
        }

    summary = metrics.metrics_summary(snapshot, curation)
    groups = metrics.duplicate_predicate_groups(snapshot)
    counts = metrics.statement_count_per_paper(snapshot, curation)
    overview = metrics.template_overview(snapshot, curation)
    return {
        "summary": {
            "predicates_without_description": summary.predicates_without_description,
            "classes_without_description": summary.classes_without_description,
            "duplicate_predicate_groups": summary.duplicate_predicate_groups,
            "unused_resources": summary.unused_resources,
            "unlabeled_resources": summary.unlabeled_resources,
            "papers_total": summary.papers_total,
            "templates_total": summary.templates_total,
            "built_at": to_iso(summary.built_at),
        },
        "predicates_without_description": entity_items(
            metrics.predicates_without_description(snapshot)
        ),
        "classes_without_description": entity_items(
            metrics.classes_without_description(snapshot)
        ),
        "unused_resources": entity_items(metrics.unused_resources(snapshot)),
        "unlabeled_resources": entity_items(metrics.unlabeled_resources(snapshot)),
        "duplicate_predicate_groups": {
            "total": len(groups),
            "items": [
                {
                    "normalized_label": g.normalized_label,
                    "size": g.size,
                    "members": list(g.members),
                    "members_without_description": list(g.members_without_description),
                }
                for g in groups[:REPORT_LIMIT]
            ],
        },
        "papers_by_statement_count": {
            "total": len(counts),
            "items": [
                {"id": paper, "label": snapshot.label_of(paper), "statements": n}
                for paper, n in sorted(counts.items(), key=lambda kv: (kv[1], kv[0]))[
                    :REPORT_LIMIT
                ]
            ],
        },
        "templates": {
            "total": len(overview.templates),
            "items": [
                {
                    "id": tid,
                    "label": label,
                    "created_at": to_iso(created) if created else None,
                }
                for tid, label, created in overview.templates[:REPORT_LIMIT]
            ],
            "monthly_counts": [
                {"month": month, "count": count}
                for month, count in overview.monthly_counts
            ],
        },
    }


def _report_markdown(report: dict) -> str:
    lines = ["# Knowledge graph quality report", ""]
    lines.append(f"Snapshot built: {report['summary']['built_at']}")
    lines.append("")
    lines.append("## Summary")
    for key, value in report["summary"].items():
        if key != "built_at":
            lines.append(f"- {key.replace('_', ' ')}: {value}")
    for key in (
        "predicates_without_description",
        "classes_without_description",
        "unused_resources",
        "unlabeled_resources",
    ):
        section = report[key]
        lines.append("")
        lines.append(f"## {key.replace('_', ' ')} ({section['total']})")
        for item in section["items"]:
            label = f" — {item['label']}" if item.get("label") else ""
            lines.append(f"- {item['id']}{label}")
    lines.append("")
    lines.append(f"## duplicate predicate groups ({report['duplicate_predicate_groups']['total']})")
    for group in report["duplicate_predicate_groups"]["items"]:
        undescribed = ", ".join(group["members_without_description"]) or "none"
        lines.append(
            f"- '{group['normalized_label']}' x{group['size']}: "
            f"{', '.join(group['members'])} (undescribed: {undescribed})"
        )
    lines.append("")
    lines.append(f"## papers by statement count ({report['papers_by_statement_count']['total']})")
    for item in report["papers_by_statement_count"]["items"]:
        lines.append(f"- {item['id']}: {item['statements']} statements")
    lines.append("")
    lines.append(f"## templates ({report['templates']['total']})")
    for item in report["templates"]["items"]:
        lines.append(f"- {item['id']} created {item['created_at'] or 'unknown'}")
    for bucket in report["templates"]["monthly_counts"]:
        lines.append(f"- {bucket['month']}: {bucket['count']} created")
    return "\n".join(lines) + "\n"


def cmd_report(args: argparse.Namespace) -> int:
    try:
        curation = CurationConfig()
        if args.config:
            curation = load_app_config(args.config).curation
        with open(args.snapshot, "rb") as fh:
            entities, statements = ingest.parse_json_dump(fh)
        snapshot = build_snapshot(entities, statements)
    except (IngestError, ModelError, ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = build_report(snapshot, curation)
    if args.format == "json":
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        print(_report_markdown(report), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgdash", description="knowledge-graph curation dashboard tools"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="load a source, validate, write a JSON dump")
    group = p_ingest.add_mutually_exclusive_group(required=True)
    group.add_argument("--ntriples", help="N-Triples file")
    group.add_argument("--json-dump", help="JSON dump file")
    group.add_argument("--endpoint", help="remote query endpoint URL")
    p_ingest.add_argument("--cache", help="cache path (required with --endpoint)")
    p_ingest.add_argument("--out", help="write the canonical JSON dump here")
    p_ingest.set_defaults(func=cmd_ingest)

    p_serve = sub.add_parser("serve", help="run the dashboard API service")
    p_serve.add_argument("--config", help="JSON config file (or KGDASH_CONFIG)")
    p_serve.add_argument("--listen", help="host:port override")
    p_serve.add_argument("--clickstream", help="clickstream export override")
    p_serve.set_defaults(func=cmd_serve)

    p_report = sub.add_parser("report", help="print the full KPI report")
    p_report.add_argument("--snapshot", required=True, help="JSON dump file")
    p_report.add_argument("--config", help="JSON config file for schema hooks")
    p_report.add_argument("--format", choices=("json", "markdown"), default="json")
    p_report.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "ingest" and args.endpoint and not args.cache:
        parser.error("--endpoint requires --cache")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
