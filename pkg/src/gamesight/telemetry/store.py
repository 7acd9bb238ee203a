"""Append-only session store with a small JSON index.

Layout under the store root:

* ``index.json`` - session metadata (difficulty, lifecycle, tracking code)
* ``pending/<id>.ndjson`` - events of open sessions, one JSON object per line
* ``sessions/<id>.ndjson`` - finalized consented sessions: one header line
  (session metadata) followed by the event lines

Open-session events are buffered durably under ``pending``; finalizing with
consent ``withhold`` deletes them, so no events of a withheld session survive
the finalize response.  Finalized sessions are immutable.  Export emits the
``sessions`` file format verbatim, one file per session, and importing an
export reproduces the original bytes.
"""
from __future__ import annotations

import json
import threading
import uuid
from pathlib import Path

from ..errors import InputError, IntegrityError, LifecycleError
from .events import GameEvent, SessionLog

STORE_SCHEMA = "gamesight.store/1"
SESSION_SCHEMA = "gamesight.session/1"


def _json_line(doc: dict) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def session_header(log: SessionLog) -> dict:
    return {
        "schema_id": SESSION_SCHEMA,
        "session_id": log.session_id,
        "created_at": log.created_at,
        "difficulty": log.difficulty,
        "consent": log.consent,
        "tracking_code": log.tracking_code,
    }


def serialize_session(log: SessionLog) -> str:
    lines = [_json_line(session_header(log))]
    lines.extend(_json_line(e.to_wire()) for e in log.events)
    return "".join(lines)


def parse_session(text: str) -> SessionLog:
    lines = [ln for ln in text.split("\n") if ln]
    if not lines:
        raise IntegrityError("empty session document")
    header = json.loads(lines[0])
    if header.get("schema_id") != SESSION_SCHEMA:
        raise IntegrityError(f"unsupported session schema {header.get('schema_id')!r}")
    log = SessionLog(
        session_id=header["session_id"],
        created_at=int(header["created_at"]),
        difficulty=header["difficulty"],
    )
    for line in lines[1:]:
        log.append(GameEvent.from_wire(log.session_id, json.loads(line)))
    log.consent = header.get("consent")
    log.tracking_code = header.get("tracking_code")
    log.finalized = True
    return log


class EventStore:
    """Filesystem-backed store; one writer per session, enforced with locks."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        (self.root / "pending").mkdir(parents=True, exist_ok=True)
        (self.root / "sessions").mkdir(parents=True, exist_ok=True)
        self._index_path = self.root / "index.json"
        self._global_lock = threading.Lock()
        self._session_locks: dict[str, threading.Lock] = {}
        self._open: dict[str, SessionLog] = {}
        if self._index_path.exists():
            self._index = json.loads(self._index_path.read_text())
            if self._index.get("schema_id") != STORE_SCHEMA:
                raise IntegrityError("unsupported store schema")
        else:
            self._index = {"schema_id": STORE_SCHEMA, "sessions": {}}
            self._write_index()

    # -- internals ---------------------------------------------------------

    def _write_index(self) -> None:
        tmp = self._index_path.with_suffix(".tmp")
        tmp.write_text(json.dumps(self._index, indent=2, sort_keys=True) + "\n")
        tmp.replace(self._index_path)

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._global_lock:
            return self._session_locks.setdefault(session_id, threading.Lock())

    def _entry(self, session_id: str) -> dict:
        try:
            return self._index["sessions"][session_id]
        except KeyError:
            raise InputError(f"unknown session {session_id!r}") from None

    def _load_open(self, session_id: str) -> SessionLog:
        if session_id in self._open:
            return self._open[session_id]
        entry = self._entry(session_id)
        if entry["finalized"]:
            raise LifecycleError(f"session {session_id} already finalized")
        log = SessionLog(session_id=session_id, created_at=entry["created_at"],
                         difficulty=entry["difficulty"])
        pending = self.root / "pending" / f"{session_id}.ndjson"
        if pending.exists():
            for line in pending.read_text().splitlines():
                if line:
                    log.events.append(GameEvent.from_wire(session_id, json.loads(line)))
        self._open[session_id] = log
        return log

    # -- public API ---------------------------------------------------------

    def create_session(self, difficulty: str = "normal", session_id: str | None = None,
                       created_at: int = 0) -> str:
        session_id = session_id or uuid.uuid4().hex[:12]
        with self._global_lock:
            if session_id in self._index["sessions"]:
                raise InputError(f"session {session_id!r} already exists")
            self._index["sessions"][session_id] = {
                "difficulty": difficulty,
                "created_at": created_at,
                "finalized": False,
                "consent": None,
                "tracking_code": None,
                "n_events": 0,
            }
            self._write_index()
        return session_id

    def record_event(self, session_id: str, event: GameEvent) -> bool:
        """Durably append one event; idempotent on exact duplicates."""
        with self._lock_for(session_id):
            log = self._load_open(session_id)
            appended = log.append(event)
            if appended:
                stored = log.events[-1]  # timestamp may have been clamped
                pending = self.root / "pending" / f"{session_id}.ndjson"
                with pending.open("a") as f:
                    f.write(_json_line(stored.to_wire()))
                    f.flush()
                entry = self._entry(session_id)
                entry["n_events"] = len(log.events)
            return appended

    def finalize(self, session_id: str, consent: str) -> str | None:
        with self._lock_for(session_id):
            log = self._load_open(session_id)
            code = log.finalize(consent)
            pending = self.root / "pending" / f"{session_id}.ndjson"
            entry = self._entry(session_id)
            entry["finalized"] = True
            entry["consent"] = consent
            entry["tracking_code"] = code
            if consent == "send":
                final = self.root / "sessions" / f"{session_id}.ndjson"
                final.write_text(serialize_session(log))
                entry["n_events"] = len(log.events)
            else:
                entry["n_events"] = 0
            if pending.exists():
                pending.unlink()
            self._open.pop(session_id, None)
            with self._global_lock:
                self._write_index()
            return code

    def ensure_session(self, session_id: str) -> None:
        self._entry(session_id)

    def get_session(self, session_id: str) -> SessionLog:
        entry = self._entry(session_id)
        if not entry["finalized"]:
            with self._lock_for(session_id):
                log = self._load_open(session_id)
                snapshot = SessionLog(session_id=session_id, created_at=log.created_at,
                                      difficulty=log.difficulty, events=list(log.events))
                return snapshot
        if entry["consent"] != "send":
            return SessionLog(session_id=session_id, created_at=entry["created_at"],
                              difficulty=entry["difficulty"], consent=entry["consent"],
                              finalized=True)
        path = self.root / "sessions" / f"{session_id}.ndjson"
        return parse_session(path.read_text())

    def session_ids(self, finalized_only: bool = False) -> list[str]:
        ids = sorted(self._index["sessions"])
        if finalized_only:
            ids = [i for i in ids if self._index["sessions"][i]["finalized"]
                   and self._index["sessions"][i]["consent"] == "send"]
        return ids

    def event_count(self, session_id: str) -> int:
        return self._entry(session_id)["n_events"]

    def export_sessions(self, out_dir: str | Path, session_ids: list[str] | None = None) -> list[Path]:
        """One file per finalized consented session; bytes equal the stored form."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        targets = session_ids if session_ids is not None else self.session_ids(finalized_only=True)
        written = []
        for sid in targets:
            entry = self._entry(sid)
            if not entry["finalized"] or entry["consent"] != "send":
                continue
            src = self.root / "sessions" / f"{sid}.ndjson"
            dst = out_dir / f"{sid}.ndjson"
            dst.write_bytes(src.read_bytes())
            written.append(dst)
        return written

    def import_session(self, path: str | Path) -> str:
        """Load an exported session document into this store."""
        log = parse_session(Path(path).read_text())
        with self._global_lock:
            if log.session_id in self._index["sessions"]:
                raise InputError(f"session {log.session_id!r} already exists")
            self._index["sessions"][log.session_id] = {
                "difficulty": log.difficulty,
                "created_at": log.created_at,
                "finalized": True,
                "consent": log.consent,
                "tracking_code": log.tracking_code,
                "n_events": len(log.events),
            }
            final = self.root / "sessions" / f"{log.session_id}.ndjson"
            final.write_text(serialize_session(log))
            self._write_index()
        return log.session_id
