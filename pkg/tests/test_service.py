import json
import threading
import urllib.error
import urllib.request

import pytest

from gamesight.games.levels import default_pack_dir
from gamesight.telemetry import EventStore, TelemetryService, make_server


@pytest.fixture()
def server(tmp_path):
    service = TelemetryService(EventStore(tmp_path / "store"), default_pack_dir())
    httpd = make_server("127.0.0.1", 0, service)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{httpd.server_address[1]}"
    yield base, service
    httpd.shutdown()


def call(base, method, path, body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(base + path, data=data, method=method,
                                 headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req) as response:
            return response.status, json.loads(response.read())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read())


def event_doc(seq, ts=0):
    return {"seq": seq, "timestamp_ms": ts, "game_id": "meta", "stage_id": "",
            "event_type": "menu_nav", "payload": {"target": "stage_select"}}


def test_create_post_finalize_round_trip(server):
    base, service = server
    status, doc = call(base, "POST", "/sessions", {"difficulty": "normal"})
    assert status == 200
    sid = doc["session_id"]

    batch = [event_doc(i, ts=i * 100) for i in range(3)]
    status, ack = call(base, "POST", f"/sessions/{sid}/events", {"events": batch})
    assert status == 200
    assert ack["accepted"] == 3 and ack["last_accepted_seq"] == 2 and not ack["rejected"]

    status, fin = call(base, "POST", f"/sessions/{sid}/finalize", {"consent": "send"})
    assert status == 200
    assert len(fin["tracking_code"]) == 5 and fin["tracking_code"].isdigit()
    assert service.store.event_count(sid) == 3


def test_at_least_once_delivery_batches_are_idempotent(server):
    base, service = server
    _, doc = call(base, "POST", "/sessions", {})
    sid = doc["session_id"]
    batch = [event_doc(0), event_doc(1, ts=5)]
    call(base, "POST", f"/sessions/{sid}/events", {"events": batch})
    status, ack = call(base, "POST", f"/sessions/{sid}/events", {"events": batch})
    assert status == 200
    assert ack["accepted"] == 0 and ack["duplicates"] == 2
    assert service.store.event_count(sid) == 2


def test_malformed_event_rejected_per_event_and_batch_continues(server):
    base, _ = server
    _, doc = call(base, "POST", "/sessions", {})
    sid = doc["session_id"]
    batch = [event_doc(0),
             {"seq": 1, "timestamp_ms": 0, "game_id": "not_a_game", "stage_id": "",
              "event_type": "menu_nav", "payload": {}},
             event_doc(1, ts=9)]
    status, ack = call(base, "POST", f"/sessions/{sid}/events", {"events": batch})
    assert status == 200
    assert ack["accepted"] == 2
    assert len(ack["rejected"]) == 1 and ack["rejected"][0]["index"] == 1


def test_finalize_withhold_deletes_buffered_events(server):
    base, service = server
    _, doc = call(base, "POST", "/sessions", {})
    sid = doc["session_id"]
    call(base, "POST", f"/sessions/{sid}/events", {"events": [event_doc(0)]})
    status, fin = call(base, "POST", f"/sessions/{sid}/finalize", {"consent": "withhold"})
    assert status == 200 and fin == {"consent": "withhold", "deleted": True}
    assert service.store.event_count(sid) == 0


def test_post_to_finalized_session_is_lifecycle_error(server):
    base, _ = server
    _, doc = call(base, "POST", "/sessions", {})
    sid = doc["session_id"]
    call(base, "POST", f"/sessions/{sid}/events", {"events": [event_doc(0)]})
    call(base, "POST", f"/sessions/{sid}/finalize", {"consent": "send"})
    status, err = call(base, "POST", f"/sessions/{sid}/events",
                       {"events": [event_doc(1)]})
    assert status == 409 and "finalized" in err["error"]


def test_unknown_session_is_not_found(server):
    base, _ = server
    status, err = call(base, "POST", "/sessions/nope/events", {"events": []})
    assert status == 404
    status, err = call(base, "POST", "/sessions/nope/finalize", {"consent": "send"})
    assert status == 404


def test_get_levels_serves_pack_documents(server):
    base, _ = server
    for game, count in (("group_swap", 3), ("sliding_path", 3), ("memory", 3),
                        ("graph", 4), ("shooter", 1)):
        status, doc = call(base, "GET", f"/levels/{game}")
        assert status == 200
        assert doc["game_id"] == game and len(doc["levels"]) == count
    status, doc = call(base, "GET", "/levels/meta")
    assert status == 200 and len(doc["challenges"]) == 10
    status, _ = call(base, "GET", "/levels/bogus")
    assert status == 400
