from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from helpers import bib_entry, bib_text, citation_bibtex, planted_topic_bibtex
from slrviz.service import create_app
from slrviz.session import GoldStandard, ReviewSession, compute_metrics


@pytest.fixture()
def client():
    return TestClient(create_app())


def _create(client, bibtex=None, **extra):
    body = {"bibtex": citation_bibtex() if bibtex is None else bibtex, **extra}
    resp = client.post("/projects", json=body)
    assert resp.status_code == 201, resp.text
    return resp.json()


# --- ingest --------------------------------------------------------------------


def test_create_project_reports_corpus_summary(client):
    info = _create(client)
    assert info["project_id"] == "p0001"
    assert info["n_studies"] == 15
    assert len(info["corpus_hash"]) == 64
    assert isinstance(info["warnings"], list)
    second = _create(client)
    assert second["project_id"] == "p0002"


def test_empty_payload_yields_project_with_warning(client):
    info = _create(client, bibtex="")
    assert info["n_studies"] == 0
    assert any("no entries" in w for w in info["warnings"])
    pid = info["project_id"]
    resp = client.get(f"/projects/{pid}/views/map")
    assert resp.status_code == 200
    assert resp.json()["points"] == []


def test_malformed_bibtex_gives_diagnostic_list(client):
    resp = client.post("/projects", json={"bibtex": "@article{a,\n  title = {oo{ps}\n}"})
    assert resp.status_code == 422
    detail = resp.json()["detail"]
    assert isinstance(detail, list)
    assert any("entry 0" in d for d in detail)


def test_non_json_body_rejected(client):
    resp = client.post(
        "/projects", content=b"not json", headers={"content-type": "application/json"}
    )
    assert resp.status_code == 422
    assert any("invalid JSON" in d for d in resp.json()["detail"])


def test_missing_bibtex_field_rejected(client):
    resp = client.post("/projects", json={"nope": 1})
    assert resp.status_code == 422


def test_oversized_payload_rejected():
    client = TestClient(create_app(payload_limit=200))
    resp = client.post("/projects", json={"bibtex": "x" * 1000})
    assert resp.status_code == 413
    assert "exceeds" in resp.json()["detail"]


def test_unknown_config_keys_rejected(client):
    resp = client.post(
        "/projects", json={"bibtex": citation_bibtex(), "config": {"sedd": 1}}
    )
    assert resp.status_code == 422
    assert any("sedd" in d for d in resp.json()["detail"])


def test_config_values_are_applied(client):
    info = _create(client, config={"cluster_k": 2, "samples": 10, "seed": 3})
    pid = info["project_id"]
    doc = client.get(f"/projects/{pid}/views/map").json()
    assert {c["cluster"] for c in doc["clusters"]} == {0, 1}
    bundles = client.get(f"/projects/{pid}/views/bundles").json()
    assert all(len(e["points"]) == 10 for e in bundles["edges"])


# --- views ----------------------------------------------------------------------


def test_map_view_shape(client):
    pid = _create(client)["project_id"]
    doc = client.get(f"/projects/{pid}/views/map").json()
    assert doc["kind"] == "map"
    assert len(doc["points"]) == 15
    for p in doc["points"]:
        assert set(p) == {"id", "x", "y", "is_control", "status", "cluster"}
        assert 0.0 <= p["x"] <= 1.0 and 0.0 <= p["y"] <= 1.0
        assert p["status"] == "undecided"
    assert 0.0 <= doc["quality"] <= 1.0


def test_bundles_view_shares_map_coordinates(client):
    pid = _create(client)["project_id"]
    map_doc = client.get(f"/projects/{pid}/views/map").json()
    bundle_doc = client.get(f"/projects/{pid}/views/bundles").json()
    assert {p["id"]: (p["x"], p["y"]) for p in map_doc["points"]} == {
        p["id"]: (p["x"], p["y"]) for p in bundle_doc["points"]
    }
    assert bundle_doc["edges"], "citation corpus should produce bundled edges"
    pos = {p["id"]: (p["x"], p["y"]) for p in map_doc["points"]}
    for e in bundle_doc["edges"]:
        first, last = e["points"][0], e["points"][-1]
        assert (first["x"], first["y"]) == pos[e["source"]]
        assert (last["x"], last["y"]) == pos[e["target"]]


def test_network_view_shape(client):
    pid = _create(client)["project_id"]
    doc = client.get(f"/projects/{pid}/views/network").json()
    assert doc["kind"] == "network"
    assert doc["cite_edges"], "corpus has in-corpus citations"
    positioned = {n["id"] for n in doc["nodes"]}
    assert positioned.isdisjoint(set(doc["isolated"]))
    for e in doc["cite_edges"]:
        assert e["source"] in positioned and e["target"] in positioned


def test_repeated_request_returns_identical_bytes(client):
    pid = _create(client)["project_id"]
    url = f"/projects/{pid}/views/map"
    assert client.get(url).content == client.get(url).content
    svg_url = f"/projects/{pid}/views/map?format=svg"
    assert client.get(svg_url).content == client.get(svg_url).content


def test_same_corpus_and_config_give_identical_views_across_projects(client):
    a = _create(client, config={"seed": 4})["project_id"]
    b = _create(client, config={"seed": 4})["project_id"]
    for kind in ("map", "bundles", "network"):
        assert (
            client.get(f"/projects/{a}/views/{kind}").content
            == client.get(f"/projects/{b}/views/{kind}").content
        )


def test_svg_format(client):
    pid = _create(client)["project_id"]
    resp = client.get(f"/projects/{pid}/views/map?format=svg")
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("image/svg+xml")
    assert resp.text.startswith("<svg")
    for kind in ("bundles", "network"):
        assert client.get(f"/projects/{pid}/views/{kind}?format=svg").status_code == 200


def test_view_error_codes(client):
    pid = _create(client)["project_id"]
    assert client.get("/projects/p9999/views/map").status_code == 404
    assert client.get(f"/projects/{pid}/views/heatmap").status_code == 404
    assert client.get(f"/projects/{pid}/views/map?format=png").status_code == 400
    assert client.get(f"/projects/{pid}/views/map?overlay=rainbow").status_code == 400
    assert client.get(f"/projects/{pid}/views/map?overlay=expression").status_code == 400
    assert client.get(f"/projects/{pid}/views/map?overlay=knn").status_code == 400
    assert (
        client.get(f"/projects/{pid}/views/map?overlay=knn&focus=zz").status_code == 400
    )


def test_expression_overlay(client):
    pid = _create(client)["project_id"]
    resp = client.get(
        f"/projects/{pid}/views/map",
        params={"overlay": "expression", "expression": "software work"},
    )
    doc = resp.json()["overlay"]
    assert doc["name"] == "expression"
    assert doc["expression"] == "software work"
    assert set(doc["counts"]) == set(doc["shade"])
    assert max(doc["shade"].values()) == 1.0
    assert min(doc["counts"].values()) >= 0


def test_knn_overlay(client):
    pid = _create(client)["project_id"]
    doc = client.get(
        f"/projects/{pid}/views/map",
        params={"overlay": "knn", "focus": "s03", "k": 4},
    ).json()["overlay"]
    assert doc["focus"] == "s03"
    assert doc["k"] == 4
    assert len(doc["neighbors"]) == 4
    assert "s03" not in doc["neighbors"]


# --- the review loop -------------------------------------------------------------


def test_decisions_change_status_overlay(client):
    pid = _create(client, started_at=0.0)["project_id"]
    url = f"/projects/{pid}/views/map?overlay=status"
    before = client.get(url).json()
    assert all(p["status"] == "undecided" for p in before["points"])

    resp = client.post(
        f"/projects/{pid}/session/decisions",
        json={"study_id": "s00", "status": "included", "at": 60.0},
    )
    assert resp.status_code == 200
    assert resp.json() == {"study_id": "s00", "status": "included", "at": 60.0, "note": ""}

    after = client.get(url).json()
    by_id = {p["id"]: p["status"] for p in after["points"]}
    assert by_id["s00"] == "included"
    svg = client.get(f"/projects/{pid}/views/map?overlay=status&format=svg").text
    assert "#2ca02c" in svg  # included studies turn green


def test_decision_error_codes(client):
    pid = _create(client, started_at=100.0)["project_id"]
    url = f"/projects/{pid}/session/decisions"
    assert client.post(url, json={"study_id": "zz", "status": "included"}).status_code == 404
    assert (
        client.post(url, json={"study_id": "s00", "status": "perhaps"}).status_code == 400
    )
    assert client.post(url, json={"study_id": "s00", "status": "included", "at": 50.0}).status_code == 409
    client.post(url, json={"study_id": "s00", "status": "included", "at": 200.0})
    resp = client.post(url, json={"study_id": "s01", "status": "included", "at": 150.0})
    assert resp.status_code == 409
    assert "precedes" in resp.json()["detail"]


def test_selection_round_trip(client):
    pid = _create(client)["project_id"]
    url = f"/projects/{pid}/session/selection"
    resp = client.post(url, json={"study_ids": ["s02", "s05", "s02"]})
    assert resp.status_code == 200
    assert resp.json() == {"selection": ["s02", "s05"]}  # deduped, order kept
    assert client.get(f"/projects/{pid}/session").json()["selection"] == ["s02", "s05"]
    assert client.post(url, json={"study_ids": ["nope"]}).status_code == 400


def test_session_endpoint_lists_log(client):
    pid = _create(client, started_at=0.0)["project_id"]
    client.post(
        f"/projects/{pid}/session/decisions",
        json={"study_id": "s01", "status": "excluded", "at": 30.0, "note": "off topic"},
    )
    doc = client.get(f"/projects/{pid}/session").json()
    assert doc["started_at"] == 0.0
    assert doc["statuses"]["s01"] == "excluded"
    assert doc["decisions"] == [
        {"study_id": "s01", "status": "excluded", "at": 30.0, "note": "off topic"}
    ]


def test_metrics_flow_and_replay_equivalence(client):
    pid = _create(client, started_at=0.0)["project_id"]

    resp = client.get(f"/projects/{pid}/session/metrics")
    assert resp.status_code == 409
    assert "gold" in resp.json()["detail"]

    gold = ["s00", "s01", "s02", "s03"]
    resp = client.put(f"/projects/{pid}/gold", json={"included": gold})
    assert resp.status_code == 200
    assert resp.json() == {"count": 4}

    moves = [
        ("s00", "included", 60.0),   # correct
        ("s01", "excluded", 120.0),  # false negative
        ("s04", "included", 180.0),  # false positive
        ("s05", "excluded", 240.0),  # correct
        ("s05", "included", 300.0),  # ...revised: false positive
    ]
    for sid, status, at in moves:
        r = client.post(
            f"/projects/{pid}/session/decisions",
            json={"study_id": sid, "status": status, "at": at},
        )
        assert r.status_code == 200

    got = client.get(f"/projects/{pid}/session/metrics").json()

    mirror = ReviewSession("h", [f"s{i:02d}" for i in range(15)], started_at=0.0)
    for sid, status, at in moves:
        mirror.decide(sid, status, at=at)
    expected = compute_metrics(mirror, GoldStandard(frozenset(gold))).to_json_dict()
    assert got == expected
    assert got["correct"] == 1
    assert got["incorrect"] == 3
    assert got["false_negatives"] == 1
    assert got["false_positives"] == 2
    assert got["undecided"] == 11
    assert got["elapsed_minutes"] == 5.0


def test_gold_validates_ids(client):
    pid = _create(client)["project_id"]
    resp = client.put(f"/projects/{pid}/gold", json={"included": ["s00", "ghost"]})
    assert resp.status_code == 400
    assert "ghost" in resp.json()["detail"]


# --- study detail ------------------------------------------------------------------


def test_study_listing_and_detail(client):
    pid = _create(client)["project_id"]
    listing = client.get(f"/projects/{pid}/studies").json()["studies"]
    assert len(listing) == 15
    assert listing[0]["id"] == "s00"
    assert listing[0]["status"] == "undecided"

    detail = client.get(f"/projects/{pid}/studies/s01").json()
    assert detail["id"] == "s01"
    assert detail["title"] == "technique number 1 for software work"
    assert isinstance(detail["references"], list) and detail["references"]
    assert detail["cited_count"] >= 0

    assert client.get(f"/projects/{pid}/studies/none").status_code == 404


def test_cited_counts_surface_in_listing(client):
    bibtex = bib_text(
        [
            bib_entry("a", "foundational methods for examples", "base abstract", [], []),
            bib_entry(
                "b",
                "building on early results",
                "second abstract",
                [],
                ["Author, A. foundational methods for examples. 2009."],
            ),
        ]
    )
    pid = _create(client, bibtex=bibtex)["project_id"]
    by_id = {s["id"]: s for s in client.get(f"/projects/{pid}/studies").json()["studies"]}
    assert by_id["a"]["cited_count"] == 1
    assert by_id["b"]["cited_count"] == 0


def test_views_still_deterministic_after_decisions(client):
    pid = _create(client, started_at=0.0)["project_id"]
    client.post(
        f"/projects/{pid}/session/decisions",
        json={"study_id": "s02", "status": "included", "at": 5.0},
    )
    url = f"/projects/{pid}/views/bundles?overlay=status"
    assert client.get(url).content == client.get(url).content
    # and the json stays parseable with the overlay attached
    doc = json.loads(client.get(url).content)
    assert doc["overlay"]["name"] == "status"
