"""Session lifecycle: gapless events, tracking codes, consent, export."""
import tempfile
from pathlib import Path

from gamesight.games.core import GameId
from gamesight.telemetry import EventStore, GameEvent, canonical_bytes, tracking_code

root = Path(tempfile.mkdtemp())
store = EventStore(root / "store")

sid = store.create_session("normal", session_id="demo")
events = [
    GameEvent(sid, 0, 0, GameId.META, "", "menu_nav", {"target": "stage_select"}),
    GameEvent(sid, 1, 1500, GameId.GROUP_SWAP, "tutorial", "tutorial_view", {}),
    GameEvent(sid, 2, 9000, GameId.GROUP_SWAP, "tutorial", "move_accepted",
              {"piece": "a0", "from": "0:0", "to": "1:0", "moves_used": 1}),
    GameEvent(sid, 3, 12_000, GameId.META, "", "consent_choice", {"choice": "send"}),
]
for event in events:
    store.record_event(sid, event)
store.record_event(sid, events[0])  # duplicate delivery is a no-op

print("canonical bytes:")
print(canonical_bytes(events).decode(), end="")
print("tracking code:", tracking_code(events))
print("finalize ->", store.finalize(sid, "send"))

exported = store.export_sessions(root / "export")
print("exported:", [p.name for p in exported])

# a withholding participant leaves nothing behind
other = store.create_session("hard", session_id="private")
store.record_event(other, GameEvent(other, 0, 0, GameId.META, "", "consent_choice",
                                    {"choice": "withhold"}))
store.finalize(other, "withhold")
print("withheld events persisted:", store.event_count(other))
