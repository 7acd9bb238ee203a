"""Deterministic rule engines for the five assessment games plus session controls."""

from .core import Direction, EventDraft, GameId, GridPos, Status
from .levels import LevelPack, load_default_pack, load_pack

__all__ = [
    "Direction",
    "EventDraft",
    "GameId",
    "GridPos",
    "Status",
    "LevelPack",
    "load_default_pack",
    "load_pack",
]
