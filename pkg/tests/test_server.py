import json

import pytest
from fastapi.testclient import TestClient

from ghboq.fixtures import case_request_document
from ghboq.pricebook import load_pricebook
from ghboq.server import create_app

SPEC_75 = {
    "total_area_m2": 75,
    "storeys": 1,
    "bedrooms": 2,
    "bathrooms": 1,
    "features": [
        {"feature": "septic"},
        {"feature": "hvac"},
        {"feature": "tiles", "grade": "standard"},
        {"feature": "paint", "grade": "standard"},
    ],
}


@pytest.fixture()
def client():
    with TestClient(create_app()) as c:
        yield c


def _case_request(case_id):
    doc = case_request_document(case_id)
    return doc["request"]


# ---- estimate ---------------------------------------------------------------


def test_estimate_endpoint(client):
    resp = client.post("/v1/estimate", json={"spec": SPEC_75})
    assert resp.status_code == 200
    body = resp.json()
    assert body["estimate"]["summary"]["total_ghs"] == 497667
    assert body["engine_version"]
    assert body["pricebook_version"]


def test_estimate_endpoint_is_stateless(client):
    first = client.post("/v1/estimate", json={"spec": SPEC_75})
    second = client.post("/v1/estimate", json={"spec": SPEC_75})
    assert first.content == second.content


def test_estimate_case_compat_flags(client):
    resp = client.post("/v1/estimate", json=_case_request("A"))
    assert resp.status_code == 200
    assert resp.json()["estimate"]["summary"]["total_ghs"] == 523585


def test_estimate_inline_overrides_do_not_stick(client):
    before = client.get("/v1/pricebook").json()["pricebook_version"]
    resp = client.post(
        "/v1/estimate",
        json={"spec": SPEC_75, "overrides": {"cement_bag_50kg": 105}},
    )
    assert resp.status_code == 200
    lines = {l["item_id"]: l for l in resp.json()["estimate"]["lines"]}
    assert lines["cement_total"]["unit_price"] == "105"
    assert client.get("/v1/pricebook").json()["pricebook_version"] == before


def test_estimate_with_layout(client):
    layout = {"scale": 1.0, "walls": [{"a": 49.19, "b": 0.15}]}
    resp = client.post("/v1/estimate", json={"spec": SPEC_75, "layout": layout})
    assert resp.status_code == 200
    assert resp.json()["estimate"]["mode"] == "geometry"


def test_estimate_invalid_spec_field(client):
    bad = dict(SPEC_75, total_area_m2=-1)
    resp = client.post("/v1/estimate", json={"spec": bad})
    assert resp.status_code == 400
    assert resp.json()["error"]["field"] == "total_area_m2"


def test_estimate_missing_spec(client):
    resp = client.post("/v1/estimate", json={})
    assert resp.status_code == 400
    assert resp.json()["error"]["field"] == "spec"


def test_estimate_unknown_region(client):
    resp = client.post("/v1/estimate", json={"spec": SPEC_75, "region": "atlantis"})
    assert resp.status_code == 404


def test_estimate_rejects_non_json(client):
    resp = client.post(
        "/v1/estimate", content=b"not json", headers={"content-type": "application/json"}
    )
    assert resp.status_code == 400
    assert resp.json()["error"]["type"] == "ParseError"


# ---- gap --------------------------------------------------------------------


def test_gap_endpoint(client):
    resp = client.post("/v1/gap", json=_case_request("A"))
    assert resp.status_code == 200
    body = resp.json()
    assert body["gap"]["gap_vs_low_pct"] == 99
    assert body["gap"]["omitted_total_ghs"] == 150188
    assert body["estimate"]["summary"]["total_ghs"] == 523585


# ---- pricebook --------------------------------------------------------------


def test_get_pricebook(client):
    resp = client.get("/v1/pricebook")
    assert resp.status_code == 200
    book = resp.json()["pricebook"]
    assert book["defaults"]["cement_bag_50kg"] == "101"
    assert book["informal_band"]["low_per_m2"] == "3500"


def test_put_overrides_reprices_later_requests(client):
    resp = client.put(
        "/v1/pricebook/overrides", json={"overrides": {"cement_bag_50kg": 105}}
    )
    assert resp.status_code == 200
    assert resp.json()["overrides"]["cement_bag_50kg"] == "105"
    est = client.post("/v1/estimate", json=_case_request("A")).json()["estimate"]
    lines = {l["item_id"]: l for l in est["lines"]}
    assert lines["cement_total"]["cost_ghs"] == 88935  # 847 pinned bags at 105


def test_put_overrides_version_conflict(client):
    current = client.get("/v1/pricebook").json()["pricebook_version"]
    ok = client.put(
        "/v1/pricebook/overrides",
        json={"overrides": {"cement_bag_50kg": 105}, "expected_version": current},
    )
    assert ok.status_code == 200
    stale = client.put(
        "/v1/pricebook/overrides",
        json={"overrides": {"cement_bag_50kg": 99}, "expected_version": current},
    )
    assert stale.status_code == 409
    body = stale.json()["error"]
    assert body["type"] == "VersionConflict"
    retry = client.put(
        "/v1/pricebook/overrides",
        json={
            "overrides": {"cement_bag_50kg": 99},
            "expected_version": body["current_version"],
        },
    )
    assert retry.status_code == 200


def test_put_overrides_unknown_material(client):
    resp = client.put(
        "/v1/pricebook/overrides", json={"overrides": {"granite_slab": 100}}
    )
    assert resp.status_code == 404


def test_put_overrides_requires_mapping(client):
    resp = client.put("/v1/pricebook/overrides", json={"overrides": [1, 2]})
    assert resp.status_code == 400
    assert resp.json()["error"]["field"] == "overrides"


def test_put_overrides_rejects_garbage_price(client):
    resp = client.put(
        "/v1/pricebook/overrides", json={"overrides": {"cement_bag_50kg": "abc"}}
    )
    assert resp.status_code == 400
    body = resp.json()["error"]
    assert body["type"] == "ValidationError"
    assert body["field"] == "overrides.cement_bag_50kg"
    # nothing was written
    assert client.get("/v1/pricebook").json()["pricebook"]["overrides"] == {}


def test_inline_override_rejects_garbage_price(client):
    resp = client.post(
        "/v1/estimate",
        json={
            "spec": {"total_area_m2": 75, "storeys": 1, "bedrooms": 2, "bathrooms": 1},
            "overrides": {"cement_bag_50kg": [1]},
        },
    )
    assert resp.status_code == 400
    assert resp.json()["error"]["field"] == "overrides.cement_bag_50kg"


def test_store_persists_to_disk(tmp_path):
    path = str(tmp_path / "book.ini")
    with TestClient(create_app(store_path=path)) as c:
        c.put("/v1/pricebook/overrides", json={"overrides": {"cement_bag_50kg": 105}})
    assert load_pricebook(path).overrides
    with TestClient(create_app(store_path=path)) as c2:
        book = c2.get("/v1/pricebook").json()["pricebook"]
        assert book["overrides"]["cement_bag_50kg"] == "105"


# ---- reference data ----------------------------------------------------------


def test_regions_endpoint(client):
    resp = client.get("/v1/regions")
    assert resp.status_code == 200
    regions = resp.json()["regions"]
    assert len(regions) == 16
    ids = [r["id"] for r in regions]
    assert ids == sorted(ids)
    northern = next(r for r in regions if r["id"] == "northern")
    assert northern["manufactured_factor"] == "1.15"


def test_case_endpoint(client):
    resp = client.get("/v1/cases/B")
    assert resp.status_code == 200
    case = resp.json()["case"]
    assert case["case_id"] == "B"
    assert case["request"]["spec"]["total_area_m2"] == 120
    assert case["expected"]


def test_case_endpoint_unknown(client):
    resp = client.get("/v1/cases/X")
    assert resp.status_code == 404
    assert "expected A, B or C" in resp.json()["error"]["message"]


def test_versions_ride_every_response(client):
    for path in ("/v1/pricebook", "/v1/regions", "/v1/cases/A"):
        body = client.get(path).json()
        assert body["engine_version"]
        assert body["pricebook_version"]


def test_browser_clients_from_other_origins_are_allowed(client):
    resp = client.get("/v1/regions", headers={"origin": "http://127.0.0.1:8080"})
    assert resp.status_code == 200
    assert resp.headers["access-control-allow-origin"] == "*"


def test_preflight_for_estimate_posts(client):
    resp = client.options(
        "/v1/estimate",
        headers={
            "origin": "http://127.0.0.1:8080",
            "access-control-request-method": "POST",
            "access-control-request-headers": "content-type",
        },
    )
    assert resp.status_code == 200
    assert "POST" in resp.headers["access-control-allow-methods"]
