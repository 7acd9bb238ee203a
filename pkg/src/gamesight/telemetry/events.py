"""Gameplay event schema, canonical serialization, and tracking codes.

Canonical byte serialization (version 1), used for tracking-code digests and
documented here byte-for-byte:

* one record per event, UTF-8, records joined by nothing (each ends in ``\\n``)
* record  := seq ";" timestamp_ms ";" game_id ";" stage_id ";" event_type ";" payload "\\n"
* payload := key "=" value pairs sorted bytewise by key, joined by ","
* values  := integers in decimal, booleans as ``true``/``false``, strings verbatim

``session_id`` is deliberately not part of the canonical bytes: the tracking
code is a pure function of the ordered event content, so the same event list
finalized in two different stores yields the same code.  Payload strings are
restricted to a charset that cannot collide with the separators.

The tracking code is the last five decimal digits of the SHA-256 digest of the
canonical bytes (digest mod 100000, zero-padded).
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field, replace

from ..errors import InputError, LifecycleError, SequenceError
from ..games.core import GameId

CANONICAL_VERSION = "gamesight.events/1"
TRACKING_CODE_MODULUS = 100_000

EVENT_TYPES = frozenset({
    "move_accepted", "guess", "shot", "spawn", "collision", "collect",
    "win", "lose", "time_expired", "pause", "resume", "restart", "surrender",
    "skip", "tutorial_view", "tutorial_skip", "menu_nav",
    "side_challenge_attempt", "side_challenge_solved", "consent_choice",
})

_STAGE_CONTROLS = frozenset({"pause", "resume", "restart", "tutorial_view", "tutorial_skip"})

# Which event types are meaningful per game; "event_type valid for game_id".
GAME_EVENT_TYPES: dict[GameId, frozenset[str]] = {
    GameId.GROUP_SWAP: _STAGE_CONTROLS | {"move_accepted", "win", "time_expired",
                                          "surrender", "skip"},
    GameId.SLIDING_PATH: _STAGE_CONTROLS | {"move_accepted", "win", "time_expired",
                                            "surrender", "skip"},
    GameId.MEMORY: _STAGE_CONTROLS | {"guess", "win"},
    GameId.SHOOTER: _STAGE_CONTROLS | {"move_accepted", "shot", "spawn", "collision",
                                       "collect", "win", "lose", "surrender"},
    GameId.GRAPH: _STAGE_CONTROLS | {"move_accepted", "win", "lose", "time_expired",
                                     "surrender", "skip"},
    GameId.META: frozenset({"menu_nav", "side_challenge_attempt", "side_challenge_solved",
                            "consent_choice"}),
}

_KEY_RE = re.compile(r"^[a-z][a-z0-9_]*$")
_STR_RE = re.compile(r"^[A-Za-z0-9_.:+\- ]*$")


@dataclass(frozen=True)
class GameEvent:
    session_id: str
    seq: int
    timestamp_ms: int
    game_id: GameId
    stage_id: str
    event_type: str
    payload: dict

    def validate(self) -> None:
        if self.seq < 0:
            raise InputError(f"seq must be non-negative, got {self.seq}")
        if self.timestamp_ms < 0:
            raise InputError(f"timestamp_ms must be non-negative, got {self.timestamp_ms}")
        if self.event_type not in EVENT_TYPES:
            raise InputError(f"unknown event_type {self.event_type!r}")
        if self.event_type not in GAME_EVENT_TYPES[self.game_id]:
            raise InputError(
                f"event_type {self.event_type!r} not valid for game {self.game_id.value!r}")
        if not _STR_RE.match(self.stage_id):
            raise InputError(f"stage_id {self.stage_id!r} has forbidden characters")
        for key, value in self.payload.items():
            if not isinstance(key, str) or not _KEY_RE.match(key):
                raise InputError(f"bad payload key {key!r}")
            if isinstance(value, bool) or isinstance(value, int):
                continue
            if isinstance(value, str):
                if not _STR_RE.match(value):
                    raise InputError(f"payload value {value!r} has forbidden characters")
                continue
            raise InputError(f"payload values must be int, bool or str, got {type(value)!r}")

    def canonical_record(self) -> bytes:
        parts = []
        for key in sorted(self.payload):
            value = self.payload[key]
            if isinstance(value, bool):
                text = "true" if value else "false"
            else:
                text = str(value)
            parts.append(f"{key}={text}")
        line = (f"{self.seq};{self.timestamp_ms};{self.game_id.value};"
                f"{self.stage_id};{self.event_type};{','.join(parts)}\n")
        return line.encode("utf-8")

    def to_wire(self) -> dict:
        return {
            "seq": self.seq,
            "timestamp_ms": self.timestamp_ms,
            "game_id": self.game_id.value,
            "stage_id": self.stage_id,
            "event_type": self.event_type,
            "payload": {k: self.payload[k] for k in sorted(self.payload)},
        }

    @classmethod
    def from_wire(cls, session_id: str, doc: dict) -> "GameEvent":
        try:
            event = cls(
                session_id=session_id,
                seq=int(doc["seq"]),
                timestamp_ms=int(doc["timestamp_ms"]),
                game_id=GameId(doc["game_id"]),
                stage_id=str(doc["stage_id"]),
                event_type=str(doc["event_type"]),
                payload=dict(doc.get("payload", {})),
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"malformed event: {exc}") from exc
        event.validate()
        return event


def canonical_bytes(events: list[GameEvent] | tuple[GameEvent, ...]) -> bytes:
    return b"".join(e.canonical_record() for e in events)


def tracking_code(events) -> str:
    digest = hashlib.sha256(canonical_bytes(events)).digest()
    return f"{int.from_bytes(digest, 'big') % TRACKING_CODE_MODULUS:05d}"


@dataclass
class SessionLog:
    """Ordered, gapless event record of one participant session."""

    session_id: str
    created_at: int = 0
    difficulty: str = "normal"
    consent: str | None = None
    events: list[GameEvent] = field(default_factory=list)
    finalized: bool = False
    tracking_code: str | None = None

    def append(self, event: GameEvent) -> bool:
        """Record one event; returns False for an idempotent exact duplicate."""
        if self.finalized:
            raise LifecycleError(f"session {self.session_id} already finalized")
        event.validate()
        expected = len(self.events)
        if event.seq < expected:
            if event == self.events[event.seq]:
                return False
            raise SequenceError(
                f"seq {event.seq} already recorded with different content")
        if event.seq > expected:
            raise SequenceError(f"seq gap: got {event.seq}, expected {expected}")
        if self.events and event.timestamp_ms < self.events[-1].timestamp_ms:
            event = replace(event, timestamp_ms=self.events[-1].timestamp_ms)
        self.events.append(event)
        return True

    def finalize(self, consent: str) -> str | None:
        if self.finalized:
            raise LifecycleError(f"session {self.session_id} already finalized")
        if consent not in ("send", "withhold"):
            raise InputError(f"consent must be 'send' or 'withhold', got {consent!r}")
        if not self.events:
            raise LifecycleError("cannot finalize a session with no events")
        self.consent = consent
        self.finalized = True
        if consent == "send":
            self.tracking_code = tracking_code(self.events)
            return self.tracking_code
        self.events = []
        return None
