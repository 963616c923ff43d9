from __future__ import annotations

import json

from kgdash import metrics
from kgdash.model import build_snapshot

from conftest import FIXTURE_DIR


def snapshot_of(state):
    return state.snapshot_handle.current


class TestHealthAndSummary:
    def test_health(self, client, fixture_state):
        body = client.get("/api/health").json()
        assert body["status"] == "ok"
        assert body["entities"] == len(snapshot_of(fixture_state).entities)
        assert body["statements"] == len(snapshot_of(fixture_state).statements)

    def test_summary_matches_engine(self, client, fixture_state):
        response = client.get("/api/metrics/summary")
        assert response.status_code == 200
        body = response.json()
        summary = metrics.metrics_summary(snapshot_of(fixture_state), fixture_state.curation)
        assert body["predicates_without_description"] == summary.predicates_without_description
        assert body["classes_without_description"] == summary.classes_without_description
        assert body["duplicate_predicate_groups"] == summary.duplicate_predicate_groups
        assert body["unused_resources"] == summary.unused_resources
        assert body["unlabeled_resources"] == summary.unlabeled_resources
        assert body["papers_total"] == summary.papers_total
        assert body["templates_total"] == summary.templates_total
        assert body["open_comments"] == 0

    def test_summary_matches_fixture_oracles(self, client, oracle_answers):
        body = client.get("/api/metrics/summary").json()
        for key, value in oracle_answers["summary"].items():
            assert body[key] == value, key


class TestListings:
    def test_undescribed_predicates_with_deep_links(self, client, fixture_state):
        body = client.get("/api/predicates/undescribed").json()
        expected = metrics.predicates_without_description(snapshot_of(fixture_state))
        assert [item["id"] for item in body["items"]] == expected
        assert body["total"] == len(expected)
        for item in body["items"]:
            assert item["url"] == fixture_state.curation.entity_url(item["id"])

    def test_unused_and_unlabeled(self, client, oracle_answers):
        unused = client.get("/api/resources/unused").json()
        assert [i["id"] for i in unused["items"]] == oracle_answers["unused_resources"]
        unlabeled = client.get("/api/resources/unlabeled").json()
        assert [i["id"] for i in unlabeled["items"]] == oracle_answers["unlabeled_resources"]

    def test_pagination_concatenation_equals_unpaginated(self, client):
        for endpoint in (
            "/api/predicates/undescribed",
            "/api/resources/unused",
            "/api/predicates/duplicates",
            "/api/papers/statement-counts",
        ):
            full = client.get(endpoint).json()["items"]
            paged = []
            offset = 0
            while True:
                page = client.get(f"{endpoint}?limit=2&offset={offset}").json()["items"]
                if not page:
                    break
                paged.extend(page)
                offset += 2
            assert paged == full, endpoint

    def test_negative_offset_rejected(self, client):
        response = client.get("/api/resources/unused?offset=-1")
        assert response.status_code == 422
        assert response.json()["code"] == "invalid_arg"


class TestDuplicates:
    def test_groups_match_engine(self, client, fixture_state):
        body = client.get("/api/predicates/duplicates").json()
        groups = metrics.duplicate_predicate_groups(snapshot_of(fixture_state))
        assert body["total"] == len(groups)
        assert [g["members"] for g in body["items"]] == [list(g.members) for g in groups]
        assert [g["size"] for g in body["items"]] == [g.size for g in groups]

    def test_task1_candidate(self, client, oracle_answers):
        body = client.get("/api/predicates/duplicates/task1").json()
        assert body["candidate"]["id"] == oracle_answers["task1"]["predicate"]
        assert body["candidate"]["url"] == oracle_answers["task1"]["url"]
        assert body["group"]["normalized_label"] == oracle_answers["task1"]["group_label"]
        assert body["group"]["size"] == oracle_answers["task1"]["group_size"]


class TestPapers:
    def test_statement_counts_ascending(self, client, oracle_answers):
        body = client.get("/api/papers/statement-counts?order=asc").json()
        statements = [item["statements"] for item in body["items"]]
        assert statements == sorted(statements)
        by_id = {item["id"]: item["statements"] for item in body["items"]}
        assert by_id == oracle_answers["statement_counts"]

    def test_statement_counts_descending(self, client):
        body = client.get("/api/papers/statement-counts?order=desc").json()
        statements = [item["statements"] for item in body["items"]]
        assert statements == sorted(statements, reverse=True)

    def test_bad_order_rejected(self, client):
        response = client.get("/api/papers/statement-counts?order=sideways")
        assert response.status_code == 422
        assert response.json()["code"] == "invalid_arg"

    def test_fewest(self, client, oracle_answers):
        body = client.get("/api/papers/fewest").json()
        assert body["id"] == oracle_answers["task3"]["paper"]
        assert body["statements"] == oracle_answers["task3"]["statements"]
        assert body["url"] == oracle_answers["task3"]["url"]

    def test_papers_in_field(self, client, fixture_state):
        count, papers = metrics.papers_in_field(
            snapshot_of(fixture_state), fixture_state.curation, "F1"
        )
        body = client.get("/api/fields/F1/papers").json()
        assert body["count"] == count
        assert [item["id"] for item in body["items"]] == papers

    def test_unknown_field_empty(self, client):
        body = client.get("/api/fields/NOPE/papers").json()
        assert body == {"field": "NOPE", "count": 0, "total": 0, "items": []}


class TestComparisons:
    def test_report(self, client, fixture_state):
        report = metrics.comparison_empty_cells(
            snapshot_of(fixture_state), fixture_state.curation, "R201"
        )
        body = client.get("/api/comparisons/R201/empty-cells").json()
        assert body["contributions"] == list(report.contributions)
        assert body["properties"] == list(report.properties)
        assert body["empty_count"] == report.empty_count
        assert body["total_cells"] == report.total_cells
        assert body["empty_cells"] == [list(c) for c in report.empty_cells]

    def test_unknown_comparison_404(self, client):
        response = client.get("/api/comparisons/UNKNOWN/empty-cells")
        assert response.status_code == 404
        assert response.json()["code"] == "not_a_comparison"


class TestTemplates:
    def test_overview(self, client, oracle_answers):
        body = client.get("/api/templates/overview").json()
        assert body["monthly_counts"] == oracle_answers["template_months"]
        assert len(body["templates"]) == oracle_answers["summary"]["templates_total"]


class TestVisits:
    def test_graph_nodes_and_edges(self, client, fixture_state):
        from kgdash.clickstream import build_transition_graph

        graph = build_transition_graph(fixture_state.sessions)
        body = client.get("/api/visits/graph").json()
        assert body["nodes"] == sorted(graph.nodes)
        assert len(body["edges"]) == len(graph.edges)
        assert sum(e["count"] for e in body["edges"]) == sum(graph.edges.values())

    def test_top_edge_differs_inside_task_range(self, client, oracle_answers):
        answer = oracle_answers["task2_1"]
        rng = oracle_answers["task_range"]
        unfiltered = client.get("/api/visits/top-edge").json()
        assert unfiltered["from"] == answer["unfiltered_edge"]["from"]
        assert unfiltered["to"] == answer["unfiltered_edge"]["to"]
        filtered = client.get(
            f"/api/visits/top-edge?from={rng['from']}&to={rng['to']}"
        ).json()
        assert filtered == answer["edge"]

    def test_next_step(self, client, oracle_answers):
        answer = oracle_answers["task2_1"]
        rng = oracle_answers["task_range"]
        body = client.get(
            f"/api/visits/next?node={answer['next_node']}&from={rng['from']}&to={rng['to']}"
        ).json()
        assert body["next"][0] == answer["next_top"]

    def test_paths_task22(self, client, oracle_answers):
        answer = oracle_answers["task2_2"]
        body = client.get("/api/visits/paths?min_len=3&top_k=1").json()
        assert body["items"][0]["path"] == answer["path"]
        assert body["items"][0]["occurrences"] == answer["occurrences"]

    def test_min_len_below_two_rejected(self, client):
        response = client.get("/api/visits/paths?min_len=1")
        assert response.status_code == 422
        assert response.json()["code"] == "invalid_arg"

    def test_inverted_range_rejected(self, client):
        response = client.get("/api/visits/top-edge?from=2024-03-08&to=2024-03-02")
        assert response.status_code == 422
        assert response.json()["code"] == "invalid_range"

    def test_malformed_date_rejected(self, client):
        response = client.get("/api/visits/graph?from=03/02/2024")
        assert response.status_code == 422
        assert response.json()["code"] == "invalid_arg"


class TestComments:
    def test_create_list_resolve_flow(self, client):
        created = client.post(
            "/api/comments",
            json={"target": "R104", "type": "incomplete", "text": "needs statements", "author": "ada"},
        )
        assert created.status_code == 201
        body = created.json()
        assert body["id"] == 1
        assert body["status"] == "open"

        listed = client.get("/api/comments?target=R104&status=open").json()
        assert listed["total"] == 1
        assert listed["items"][0]["text"] == "needs statements"

        patched = client.patch("/api/comments/1", json={"status": "resolved"})
        assert patched.status_code == 200
        assert patched.json()["status"] == "resolved"
        assert client.get("/api/comments?status=open").json()["total"] == 0

    def test_unknown_target_404(self, client):
        response = client.post(
            "/api/comments",
            json={"target": "R999", "type": "other", "text": "x", "author": "ada"},
        )
        assert response.status_code == 404
        assert response.json()["code"] == "unknown_target"

    def test_empty_text_422(self, client):
        response = client.post(
            "/api/comments",
            json={"target": "R104", "type": "other", "text": "  ", "author": "ada"},
        )
        assert response.status_code == 422
        assert response.json()["code"] == "empty_text"

    def test_bad_type_422(self, client):
        response = client.post(
            "/api/comments",
            json={"target": "R104", "type": "nonsense", "text": "x", "author": "ada"},
        )
        assert response.status_code == 422
        assert response.json()["code"] == "invalid_arg"

    def test_patch_unknown_404(self, client):
        response = client.patch("/api/comments/99", json={"status": "resolved"})
        assert response.status_code == 404
        assert response.json()["code"] == "unknown_comment"

    def test_summary_open_comments_count(self, client):
        client.post(
            "/api/comments",
            json={"target": "R104", "type": "question", "text": "why?", "author": "ada"},
        )
        assert client.get("/api/metrics/summary").json()["open_comments"] == 1


class TestCors:
    def test_preflight_allowed_when_enabled(self, fixture_state):
        from fastapi.testclient import TestClient

        from kgdash.api import create_app

        fixture_state.cors = True
        with TestClient(create_app(fixture_state)) as client:
            response = client.options(
                "/api/health",
                headers={
                    "Origin": "http://localhost:5173",
                    "Access-Control-Request-Method": "GET",
                },
            )
            assert response.headers["access-control-allow-origin"] == "*"


def test_fixture_sizes_meet_contract(fixture_graph):
    entities, _ = fixture_graph
    assert len(entities) >= 50
    rows = (FIXTURE_DIR / "clickstream_fixture.csv").read_text().splitlines()[1:]
    visits = {line.split(",")[0] for line in rows}
    assert len(visits) >= 30


def test_fixture_config_parses():
    from kgdash.config import load_app_config

    config = load_app_config(FIXTURE_DIR / "fixture_config.json")
    assert config.salt == "fixture-salt"
    assert config.curation.paper_class == "Paper"
    assert json.loads((FIXTURE_DIR / "fixture_config.json").read_text())["cors"] is True
