"""Event schema, session store, tracking codes and the ingestion service."""

from .events import (
    EVENT_TYPES,
    GAME_EVENT_TYPES,
    GameEvent,
    SessionLog,
    canonical_bytes,
    tracking_code,
)
from .store import EventStore, parse_session, serialize_session
from .service import TelemetryService, make_server

__all__ = [
    "EVENT_TYPES",
    "GAME_EVENT_TYPES",
    "GameEvent",
    "SessionLog",
    "canonical_bytes",
    "tracking_code",
    "EventStore",
    "parse_session",
    "serialize_session",
    "TelemetryService",
    "make_server",
]
