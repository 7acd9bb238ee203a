"""Behavioral mapping coefficients for synthetic players.

Every trait-to-behavior coefficient lives in this one block so the generative
model stays inspectable.  The mapping is an explicit encoding of the observed
suitability signatures (puzzle wins up, side challenges up, menu navigation
up, pauses down, retries down, surrenders down) and is a validation
instrument, not a claim about humans.  All mappings are monotone in their
driving trait.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BehaviorConfig:
    # puzzle play: probability of a random (non-optimal) move
    puzzle_error_floor: float = 0.0
    puzzle_error_scale: float = 0.75
    move_think_ms: int = 1300
    think_jitter_ms: int = 900
    overtime_grace_factor: float = 0.6

    # memory game: exposure memorization and mid-game card memory
    memory_recall_floor: float = 0.15
    memory_recall_scale: float = 0.80
    memory_remember_floor: float = 0.40
    memory_remember_scale: float = 0.60
    guess_think_ms: int = 1500
    max_memory_guesses: int = 400

    # tutorials: view probability from information/help seeking
    tutorial_view_floor: float = 0.15
    tutorial_view_scale: float = 0.75

    # pauses: per-stage probability from (1 - time_management)
    pause_rate: float = 0.55
    pause_min_ms: int = 5000
    pause_max_ms: int = 20000

    # surrender/skip decisions: threshold from (1 - persistence), escalating
    giveup_base: float = 1.0
    giveup_escalation: float = 0.12
    skip_preference: float = 0.55
    max_attempts: int = 60

    # side challenges: engagement logit and solve probability
    side_challenge_opportunities: int = 8
    side_logit_persistence: float = 2.2
    side_logit_thinking: float = 1.4
    side_logit_bias: float = -1.8
    side_solve_floor: float = 0.25
    side_solve_scale: float = 0.70

    # menu navigation: base per stage plus info-seeking browsing
    menu_extra_rate: float = 0.7
    menu_help_rate: float = 1.8

    # shooter: skill, dodging, aiming, panic fire
    shooter_skill_base: float = 0.05
    shooter_skill_tm: float = 1.25
    shooter_skill_thinking: float = 0.45
    shooter_adapt_boost: float = 0.06
    dodge_floor: float = 0.35
    dodge_scale: float = 0.62
    collect_floor: float = 0.30
    collect_scale: float = 0.50
    aim_floor: float = 0.10
    aim_scale: float = 0.35
    fire_base: float = 0.05
    fire_panic: float = 0.10


DEFAULT_BEHAVIOR = BehaviorConfig()


def clip01(x: float) -> float:
    return 0.0 if x < 0.0 else 1.0 if x > 1.0 else x
