from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).parent
FIXTURE_DIR = TESTS_DIR / "fixtures"
GOLDEN_DIR = TESTS_DIR / "golden"

sys.path.insert(0, str(TESTS_DIR))


@pytest.fixture(scope="session")
def oracle_answers() -> dict:
    return json.loads((FIXTURE_DIR / "oracle_answers.json").read_text())


@pytest.fixture(scope="session")
def fixture_graph():
    from kgdash.ingest import parse_json_dump

    with open(FIXTURE_DIR / "kg_fixture.json", "rb") as fh:
        return parse_json_dump(fh)


@pytest.fixture(scope="session")
def fixture_curation():
    from kgdash.model import CurationConfig

    config = json.loads((FIXTURE_DIR / "fixture_config.json").read_text())
    return CurationConfig(
        entity_url_template=config["entity_url_template"], **config["schema"]
    )


@pytest.fixture
def fixture_state(tmp_path, fixture_graph, fixture_curation):
    """AppState over the committed fixture with a throwaway journal."""
    from kgdash import api, clickstream
    from kgdash.comments import CommentStore
    from kgdash.model import build_snapshot

    entities, statements = fixture_graph
    config = json.loads((FIXTURE_DIR / "fixture_config.json").read_text())
    sessions = clickstream.load_clickstream(
        str(FIXTURE_DIR / "clickstream_fixture.csv"), config["salt"]
    )
    store = CommentStore(tmp_path / "journal.jsonl")
    yield api.AppState(
        snapshot_handle=api.SnapshotHandle(build_snapshot(entities, statements)),
        comment_store=store,
        curation=fixture_curation,
        sessions=sessions,
    )
    store.close()


@pytest.fixture
def client(fixture_state):
    from fastapi.testclient import TestClient

    from kgdash.api import create_app

    with TestClient(create_app(fixture_state)) as test_client:
        yield test_client
