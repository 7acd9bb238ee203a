"""HTTP ingestion service for gameplay telemetry.

Endpoints (JSON bodies):

* ``POST /sessions``                 ``{"difficulty": "normal"}`` -> ``{"session_id": ...}``
* ``POST /sessions/<id>/events``     ``{"events": [...]}`` -> per-event ack; the batch
  continues past malformed events and duplicates are idempotent
* ``POST /sessions/<id>/finalize``   ``{"consent": "send"|"withhold"}`` -> tracking code
  or a withhold acknowledgement (buffered events deleted)
* ``GET  /levels/<game_id>``         level-pack document for one game

No personally identifying fields exist anywhere on the wire.  The server adds
permissive CORS headers so the browser client can talk to it directly.
"""
from __future__ import annotations

import json
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from ..errors import GamesightError, InputError, LifecycleError, SequenceError
from ..games.core import GameId
from ..games.levels import game_document
from .events import GameEvent
from .store import EventStore


class TelemetryService:
    def __init__(self, store: EventStore, levels_dir: str | Path):
        self.store = store
        self.levels_dir = Path(levels_dir)

    def create_session(self, body: dict) -> dict:
        difficulty = str(body.get("difficulty", "normal"))
        session_id = self.store.create_session(
            difficulty=difficulty, created_at=int(body.get("created_at", time.time())))
        return {"session_id": session_id, "difficulty": difficulty}

    def post_events(self, session_id: str, body: dict) -> dict:
        self.store.ensure_session(session_id)
        events = body.get("events")
        if not isinstance(events, list):
            raise InputError("body must contain an 'events' list")
        accepted = 0
        duplicates = 0
        rejected = []
        last_seq = None
        for i, doc in enumerate(events):
            try:
                event = GameEvent.from_wire(session_id, doc)
                fresh = self.store.record_event(session_id, event)
            except (InputError, SequenceError) as exc:
                rejected.append({"index": i, "seq": doc.get("seq") if isinstance(doc, dict) else None,
                                 "error": str(exc)})
                continue
            if fresh:
                accepted += 1
            else:
                duplicates += 1
            last_seq = event.seq
        return {"accepted": accepted, "duplicates": duplicates,
                "last_accepted_seq": last_seq, "rejected": rejected}

    def finalize(self, session_id: str, body: dict) -> dict:
        consent = str(body.get("consent", ""))
        code = self.store.finalize(session_id, consent)
        if consent == "send":
            return {"consent": "send", "tracking_code": code}
        return {"consent": "withhold", "deleted": True}

    def get_levels(self, game_id: str) -> dict:
        try:
            gid = GameId(game_id)
        except ValueError:
            raise InputError(f"unknown game {game_id!r}") from None
        return game_document(self.levels_dir, gid)


class _Handler(BaseHTTPRequestHandler):
    service: TelemetryService  # set by make_server

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, status: int, doc: dict) -> None:
        body = json.dumps(doc).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(body)

    def _body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if length == 0:
            return {}
        raw = self.rfile.read(length)
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON body: {exc}") from exc
        if not isinstance(doc, dict):
            raise InputError("body must be a JSON object")
        return doc

    def _route(self, method: str) -> None:
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        try:
            if method == "POST" and parts == ["sessions"]:
                self._send(200, self.service.create_session(self._body()))
            elif method == "POST" and len(parts) == 3 and parts[0] == "sessions" \
                    and parts[2] == "events":
                self._send(200, self.service.post_events(parts[1], self._body()))
            elif method == "POST" and len(parts) == 3 and parts[0] == "sessions" \
                    and parts[2] == "finalize":
                self._send(200, self.service.finalize(parts[1], self._body()))
            elif method == "GET" and len(parts) == 2 and parts[0] == "levels":
                self._send(200, self.service.get_levels(parts[1]))
            else:
                self._send(404, {"error": f"no route for {method} {self.path}"})
        except InputError as exc:
            if "unknown session" in str(exc):
                self._send(404, {"error": str(exc)})
            else:
                self._send(400, {"error": str(exc)})
        except (LifecycleError, SequenceError) as exc:
            self._send(409, {"error": str(exc)})
        except GamesightError as exc:
            self._send(500, {"error": str(exc)})

    def do_GET(self):
        self._route("GET")

    def do_POST(self):
        self._route("POST")

    def do_OPTIONS(self):
        self._send(204, {})


def make_server(host: str, port: int, service: TelemetryService) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"service": service})
    return ThreadingHTTPServer((host, port), handler)


def serve_forever(host: str, port: int, store_dir: str | Path,
                  levels_dir: str | Path) -> None:  # pragma: no cover - wrapper
    service = TelemetryService(EventStore(store_dir), levels_dir)
    server = make_server(host, port, service)
    print(f"telemetry service on http://{host}:{server.server_address[1]} "
          f"(store={store_dir}, levels={levels_dir})", flush=True)
    server.serve_forever()
