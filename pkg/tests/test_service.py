"""HTTP surface: request validation, response shapes, error mapping."""

import pytest
from fastapi.testclient import TestClient

from neighborhood_bound.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestHealth:
    def test_health(self, client):
        body = client.get("/health").json()
        assert body["status"] == "ok"
        assert "version" in body


class TestCheck:
    def test_digraph_with_certificate(self, client):
        r = client.post(
            "/check", json={"graph": {"n": 3, "edges": [[0, 1], [1, 2], [2, 0]]}}
        )
        assert r.status_code == 200
        body = r.json()
        assert body["kind"] == "digraph"
        assert body["oracle"] == {"t_size": 3, "e_size": 3, "holds": True}
        assert body["certificate"]["steps"][0]["kind"] == "EulerCase1"
        assert body["verify"]["holds"] is True
        assert body["certificate_error"] is None
        assert body["ok"] is True

    def test_undirected_runs_corollary_and_certifies_symmetrization(self, client):
        r = client.post(
            "/check",
            json={"graph": {"n": 3, "edges": [[0, 1]], "undirected": True}},
        )
        body = r.json()
        assert body["kind"] == "undirected"
        assert body["corollary"] == {"g2_size": 2, "g1_size": 2, "holds": True}
        assert body["verify"]["holds"] is True
        assert body["ok"] is True

    def test_out_of_range_edge_is_a_client_error(self, client):
        r = client.post("/check", json={"graph": {"n": 2, "edges": [[0, 5]]}})
        assert r.status_code == 400
        assert "out of range" in r.json()["detail"]
        assert r.json()["error"] == "ValueError"

    def test_unknown_fields_rejected(self, client):
        r = client.post("/check", json={"graph": {"n": 2, "edges": [], "color": "red"}})
        assert r.status_code == 422

    def test_strict_flag_accepted(self, client):
        r = client.post(
            "/check",
            json={"graph": {"n": 2, "edges": [[0, 1]]}, "strict": True},
        )
        assert r.status_code == 200
        assert r.json()["ok"] is True


class TestFuzz:
    def test_seeded_run(self, client):
        r = client.post("/fuzz", json={"seed": 3, "count": 10})
        body = r.json()
        assert body["count"] == body["holds"] == body["certified"] == 10
        assert body["ok"] is True

    def test_same_seed_same_body(self, client):
        a = client.post("/fuzz", json={"seed": 9, "count": 25, "n": 5})
        b = client.post("/fuzz", json={"seed": 9, "count": 25, "n": 5})
        assert a.json() == b.json()

    def test_count_must_be_positive(self, client):
        r = client.post("/fuzz", json={"seed": 0, "count": 0})
        assert r.status_code == 422


class TestExhaustive:
    def test_directed_slice(self, client):
        r = client.post("/exhaustive", json={"n_max": 2})
        body = r.json()
        assert body["total_graphs"] == 19
        assert body["per_n"]["2"]["graphs"] == 16
        assert body["ok"] is True

    def test_undirected_slice(self, client):
        r = client.post("/exhaustive", json={"n_max": 3, "undirected": True})
        body = r.json()
        assert body["total_graphs"] == 12
        assert body["ok"] is True

    def test_oversized_rejected(self, client):
        r = client.post("/exhaustive", json={"n_max": 6})
        assert r.status_code == 400


class TestMatrix:
    def test_worked_example(self, client):
        r = client.post("/matrix", json={"matrix": [[0, 1], [0, 0]]})
        body = r.json()
        assert body["gram_size"] == 2 and body["supp_size"] == 1
        assert body["numeric_agrees"] is True
        assert body["support"] == [[0, 1]]
        assert sorted(map(tuple, body["gram"])) == [(0, 0), (1, 1)]
        assert body["support_graph"] == {"n": 2, "edges": [[0, 1]]}
        assert body["ok"] is True

    def test_negative_entry_names_cell(self, client):
        r = client.post("/matrix", json={"matrix": [[0, -1], [0, 0]]})
        assert r.status_code == 400
        assert "cell (0, 1)" in r.json()["detail"]


class TestGrading:
    def test_two_element_worked_example(self, client):
        r = client.post("/grading", json={"group": "C2", "tuple": ["e", "a"]})
        body = r.json()
        assert body["dims"] == {"0": 2, "1": 2}
        assert body["total"] == body["expected_total"] == 4
        assert body["theorem_b"] == {"trivial_is_max": True, "witness": None}
        assert body["ok"] is True

    def test_symmetric_group_with_subgroup(self, client):
        r = client.post(
            "/grading",
            json={"group": "S3", "H": ["(123)"], "tuple": ["e", "(12)"]},
        )
        body = r.json()
        assert body["total"] == 12
        assert body["group_order"] == 6
        assert sorted(body["H"]) == ["123", "231", "312"]
        assert body["ok"] is True

    def test_explicit_table_group(self, client):
        klein = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
        r = client.post("/grading", json={"group": klein, "tuple": ["0", "1"]})
        assert r.status_code == 200
        assert r.json()["expected_total"] == 4

    def test_component_edges_exposed(self, client):
        r = client.post("/grading", json={"group": "C2", "tuple": ["e", "a"]})
        edges = r.json()["component_edges"]
        assert set(edges) == {"0", "1"}
        assert edges["0"] == [[0, 0], [1, 1]]
        assert edges["1"] == [[0, 1], [1, 0]]

    def test_unknown_group_spec(self, client):
        r = client.post("/grading", json={"group": "K9", "tuple": ["e"]})
        assert r.status_code == 400
        assert r.json()["error"] == "ParseError"

    def test_unknown_tuple_element(self, client):
        r = client.post("/grading", json={"group": "C2", "tuple": ["z9"]})
        assert r.status_code == 400

    def test_empty_tuple_rejected(self, client):
        r = client.post("/grading", json={"group": "C2", "tuple": []})
        assert r.status_code == 422


class TestGradingSweep:
    def test_two_element_group(self, client):
        r = client.post("/grading-sweep", json={"group": "C2", "n_max": 2})
        body = r.json()
        assert body["subgroup_count"] == 2
        assert body["data_count"] == 12
        assert body["violation_count"] == 0
        assert body["ok"] is True

    def test_oversized_group_rejected(self, client):
        r = client.post("/grading-sweep", json={"group": "S5", "n_max": 1})
        assert r.status_code == 400
