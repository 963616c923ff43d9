"""Regenerate the committed API golden files from the fixture.

Run from the repository root after any deliberate contract change:

    python3 tests/golden/make_golden.py

Then review the diff: every changed golden byte is an API contract change.
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE.parent))
sys.path.insert(0, str(HERE.parent.parent / "src"))

from fastapi.testclient import TestClient

from golden_endpoints import collect_responses
from kgdash import api, clickstream
from kgdash.comments import CommentStore
from kgdash.ingest import parse_json_dump
from kgdash.model import CurationConfig, build_snapshot

FIXTURES = HERE.parent / "fixtures"


def main() -> None:
    config = json.loads((FIXTURES / "fixture_config.json").read_text())
    with open(FIXTURES / "kg_fixture.json", "rb") as fh:
        entities, statements = parse_json_dump(fh)
    sessions = clickstream.load_clickstream(
        str(FIXTURES / "clickstream_fixture.csv"), config["salt"]
    )
    curation = CurationConfig(
        entity_url_template=config["entity_url_template"], **config["schema"]
    )
    with tempfile.TemporaryDirectory() as tmp:
        store = CommentStore(Path(tmp) / "journal.jsonl")
        state = api.AppState(
            snapshot_handle=api.SnapshotHandle(build_snapshot(entities, statements)),
            comment_store=store,
            curation=curation,
            sessions=sessions,
        )
        with TestClient(api.create_app(state)) as client:
            responses = collect_responses(client)
        store.close()

    for name, payload in responses.items():
        (HERE / f"{name}.json").write_text(payload, encoding="utf-8")
    print(f"wrote {len(responses)} golden files to {HERE}")


if __name__ == "__main__":
    main()
