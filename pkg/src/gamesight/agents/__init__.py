"""Synthetic trait-parameterized players and cohort generation."""

from .config import DEFAULT_BEHAVIOR, BehaviorConfig
from .cohort import Cohort, generate_cohort
from .player import ParticipantSimulator, simulate_participant
from .traits import CohortSpec, TraitProfile

__all__ = [
    "DEFAULT_BEHAVIOR",
    "BehaviorConfig",
    "Cohort",
    "generate_cohort",
    "ParticipantSimulator",
    "simulate_participant",
    "CohortSpec",
    "TraitProfile",
]
