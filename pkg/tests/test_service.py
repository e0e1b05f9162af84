import json
from datetime import timedelta

import pytest
from fastapi.testclient import TestClient

from labelmotion.dataset import DEFAULT_EPOCH, format_timestamp, synthetic_points
from labelmotion.planner import DAG
from labelmotion.scenario import ViewState, get_script, run_script
from labelmotion.service import ServiceConfig, create_app


@pytest.fixture()
def client():
    return TestClient(create_app(ServiceConfig(synthetic_points=150)))


def default_view_body():
    return {
        "center_lon": 14.45,
        "center_lat": 41.30,
        "zoom": 7,
        "time_of_interest": format_timestamp(DEFAULT_EPOCH + timedelta(hours=3)),
    }


def create_session(client, style="dag", seed=11):
    resp = client.post("/sessions", json={
        "dataset_id": f"synthetic-{seed}",
        "style": style,
        "view": default_view_body(),
    })
    assert resp.status_code == 201
    return resp.json()


def action_body(action):
    return {"action": action}


def test_create_session_valid(client):
    doc = create_session(client)
    assert doc["session_id"].startswith("s")
    assert doc["labeling"]


def test_create_session_unknown_dataset(client):
    resp = client.post("/sessions", json={"dataset_id": "missing"})
    assert resp.status_code == 404


def test_sessions_are_independent(client):
    a = create_session(client)
    b = create_session(client)
    client.post(f"/sessions/{a['session_id']}/interact",
                json=action_body({"type": "time_shift", "minutes": 30}))
    state_b = client.get(f"/sessions/{b['session_id']}/state").json()
    assert state_b["view"]["time_of_interest"] == b["view"]["time_of_interest"]


def test_interact_time_shift_and_state_consistency(client):
    doc = create_session(client)
    sid = doc["session_id"]
    resp = client.post(f"/sessions/{sid}/interact",
                       json=action_body({"type": "time_shift", "minutes": 5}))
    assert resp.status_code == 200
    body = resp.json()
    state = client.get(f"/sessions/{sid}/state").json()
    assert state["labeling"] == body["labeling"]
    assert state["view"] == body["view"]


def test_interact_invalid_action(client):
    sid = create_session(client)["session_id"]
    resp = client.post(f"/sessions/{sid}/interact",
                       json=action_body({"type": "teleport"}))
    assert resp.status_code == 400
    resp = client.post(f"/sessions/{sid}/interact",
                       json=action_body({"type": "zoom", "step": 3}))
    assert resp.status_code == 400


def test_interact_unknown_session(client):
    resp = client.post("/sessions/shrug/interact",
                       json=action_body({"type": "zoom", "step": 1}))
    assert resp.status_code == 404


def test_zoom_reveals_plan_with_phases(client):
    sid = create_session(client, seed=21)["session_id"]
    resp = client.post(f"/sessions/{sid}/interact",
                       json=action_body({"type": "zoom", "step": 1}))
    assert resp.status_code == 200
    plan = resp.json()["plan"]
    assert plan["version"] == 1
    assert set(plan["phases"]) == {"removal", "movement", "addition"}


def test_labeling_stream_is_continuous(client):
    sid = create_session(client, seed=31)["session_id"]
    prev = None
    for action in [{"type": "time_shift", "minutes": 30},
                   {"type": "zoom", "step": 1},
                   {"type": "pan", "dlon": 0.0, "dlat": 0.28},
                   {"type": "time_shift", "minutes": 5}]:
        resp = client.post(f"/sessions/{sid}/interact", json=action_body(action))
        assert resp.status_code == 200
        body = resp.json()
        plan = body["plan"]
        if prev is not None:
            source_ids = ({r["label_id"] for r in plan["removals"]}
                          | {m["label_id"] for m in plan["movements"]}
                          | {s["label_id"] for s in plan["stationary"]})
            assert source_ids == set(prev)
        prev = body["labeling"]


def test_service_matches_library_run():
    config = ServiceConfig(synthetic_points=150)
    client = TestClient(create_app(config))
    seed = 11
    sid = create_session(client, style="dag", seed=seed)["session_id"]
    service_metrics = []
    for action in [{"type": "time_shift", "minutes": 30},
                   {"type": "zoom", "step": 1},
                   {"type": "pan", "dlon": 0.0, "dlat": 0.28},
                   {"type": "time_shift", "minutes": 5}]:
        resp = client.post(f"/sessions/{sid}/interact", json=action_body(action))
        service_metrics.append(resp.json()["metrics"])
    pts = synthetic_points(seed, n_points=150, center=(14.45, 41.30))
    view = ViewState(14.45, 41.30, 7, DEFAULT_EPOCH + timedelta(hours=3))
    records = run_script(pts, view, get_script("a"), DAG)
    assert len(records) == len(service_metrics)
    for lib, svc in zip(records, service_metrics):
        assert svc["pair_count"] == lib.pair_count
        assert svc["moved"] == lib.moved
        assert svc["added"] == lib.added
        assert svc["removed"] == lib.removed
        assert svc["makespan"] == pytest.approx(lib.makespan)
