"""Cohort generation: class-conditional profiles, sessions, demographics, labels."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InputError
from ..games.levels import LevelPack
from ..telemetry.events import SessionLog
from .config import DEFAULT_BEHAVIOR, BehaviorConfig, clip01
from .player import simulate_participant
from .traits import TRAIT_NAMES, CohortSpec, TraitProfile

_MASK64 = (1 << 64) - 1

MBTI_T_GIVEN_THINKING = 0.8  # thinking >= 0.5 maps to MBTI T with this probability

DEMOGRAPHIC_COLUMNS = (
    "Session ID",
    "Unique Gameplay Tracking Code",
    "Participant Age",
    "Participant Gender",
    "Gender Flag: Male",
    "Gender Flag: Female",
    "Computer Engineering Background",
    "MBTI Personality Type",
    "MBTI Extraversion-Introversion",
    "MBTI Sensing-Intuition",
    "MBTI Thinking-Feeling",
    "MBTI Judging-Perceiving",
    "MBTI SJ Functional Group",
    "MBTI SP Functional Group",
    "MBTI NF Functional Group",
    "MBTI NT Functional Group",
    "Confirmed Programming Interest",
    "Predicted Programming Suitability",
    "Help-Seeking Behavior",
    "Problem-Solving via Online Search Skill",
    "Time Management Ability",
    "Competitive Motivation",
    "Behavioral Flexibility and Adaptability",
    "Primary Gaming Platform",
    "Average Weekly Gameplay Duration",
)


@dataclass
class Cohort:
    spec: CohortSpec
    logs: list[SessionLog]
    demographics: list[dict]
    labels: np.ndarray          # ground truth, 1 = suitable
    labeled_mask: np.ndarray    # True where the label is released to the pipeline
    profiles: list[TraitProfile]


def _truncated_normal(rng: np.random.Generator, mean: float, sd: float) -> float:
    for _ in range(1000):
        v = rng.normal(mean, sd)
        if 0.0 <= v <= 1.0:
            return float(v)
    return clip01(mean)


def sample_profile(rng: np.random.Generator, means: TraitProfile, sd: float) -> TraitProfile:
    return TraitProfile(**{n: _truncated_normal(rng, getattr(means, n), sd)
                           for n in TRAIT_NAMES})


def _demographics(rng: np.random.Generator, profile: TraitProfile, suitable: bool,
                  labeled: bool, session_id: str, code: str) -> dict:
    t_prob = MBTI_T_GIVEN_THINKING if profile.thinking >= 0.5 else 1 - MBTI_T_GIVEN_THINKING
    tf = "T" if rng.random() < t_prob else "F"
    # weaker secondary associations: suitable skews introverted and intuitive
    ei = "E" if rng.random() < (0.38 if suitable else 0.58) else "I"
    sn = "S" if rng.random() < (0.42 if suitable else 0.62) else "N"
    jp = "J" if rng.random() < clip01(1.60 * profile.time_management - 0.35) else "P"
    gender = "male" if rng.random() < 0.55 else ("female" if rng.random() < 0.85 else "other")
    background = rng.random() < (0.7 if suitable else 0.15)
    platform = ("phone", "pc", "console", "none")[
        int(rng.choice(4, p=(0.45, 0.35, 0.10, 0.10)))]
    row = {
        "Session ID": session_id,
        "Unique Gameplay Tracking Code": code,
        "Participant Age": int(rng.integers(14, 46)),
        "Participant Gender": gender,
        "Gender Flag: Male": int(gender == "male"),
        "Gender Flag: Female": int(gender == "female"),
        "Computer Engineering Background": int(background),
        "MBTI Personality Type": ei + sn + tf + jp,
        "MBTI Extraversion-Introversion": ei,
        "MBTI Sensing-Intuition": sn,
        "MBTI Thinking-Feeling": tf,
        "MBTI Judging-Perceiving": jp,
        "MBTI SJ Functional Group": int(sn == "S" and jp == "J"),
        "MBTI SP Functional Group": int(sn == "S" and jp == "P"),
        "MBTI NF Functional Group": int(sn == "N" and tf == "F"),
        "MBTI NT Functional Group": int(sn == "N" and tf == "T"),
        "Confirmed Programming Interest": int(rng.random() < (0.75 if suitable else 0.25)),
        "Predicted Programming Suitability": int(suitable) if labeled else "",
        "Help-Seeking Behavior": int(rng.random() < clip01(1.80 * profile.help_seeking - 0.45)),
        "Problem-Solving via Online Search Skill":
            int(rng.random() < clip01(1.05 * profile.information_seeking - 0.10)),
        "Time Management Ability":
            int(rng.random() < clip01(1.80 * profile.time_management - 0.40)),
        "Competitive Motivation":
            int(rng.random() < clip01(0.15 + 0.70 * profile.persistence)),
        "Behavioral Flexibility and Adaptability":
            int(rng.random() < clip01(0.10 + 0.80 * profile.adaptability)),
        "Primary Gaming Platform": platform,
        "Average Weekly Gameplay Duration": round(float(rng.gamma(2.0, 3.0)), 1),
    }
    return row


def generate_cohort(spec: CohortSpec, pack: LevelPack,
                    config: BehaviorConfig = DEFAULT_BEHAVIOR) -> Cohort:
    """Simulate the full cohort; deterministic given the spec seed."""
    n = spec.n_participants
    if n <= 0:
        raise InputError("degenerate cohort: n_participants must be positive")
    seed = int(spec.seed) & _MASK64
    n_suitable = int(round(n * spec.suitable_fraction))
    n_suitable = min(max(n_suitable, 1), n - 1)

    order_rng = np.random.default_rng(np.random.SeedSequence([seed, 0]))
    labels = np.zeros(n, dtype=int)
    labels[:n_suitable] = 1
    order_rng.shuffle(labels)

    # stratified labeled subset: proportional per class, at least one of each
    labeled_mask = np.zeros(n, dtype=bool)
    if spec.labeled_count:
        k_suit = int(round(spec.labeled_count * n_suitable / n))
        k_suit = min(max(k_suit, 1), spec.labeled_count - 1) \
            if 0 < spec.labeled_count < n else k_suit
        k_unsuit = spec.labeled_count - k_suit
        for cls, k in ((1, k_suit), (0, k_unsuit)):
            idx = np.flatnonzero(labels == cls)
            order_rng.shuffle(idx)
            labeled_mask[idx[:k]] = True

    logs: list[SessionLog] = []
    demographics: list[dict] = []
    profiles: list[TraitProfile] = []
    for i in range(n):
        participant_rng = np.random.default_rng(np.random.SeedSequence([seed, 1, i]))
        means = spec.suitable_means if labels[i] == 1 else spec.unsuitable_means
        profile = sample_profile(participant_rng, means, spec.profile_noise_sd)
        profiles.append(profile)
        participant_seed = int(np.random.SeedSequence([seed, 2, i]).generate_state(1)[0])
        session_id = f"p{i:04d}"
        log = simulate_participant(profile, pack, participant_seed, config,
                                   session_id=session_id, created_at=i)
        logs.append(log)
        demo_rng = np.random.default_rng(np.random.SeedSequence([seed, 3, i]))
        demographics.append(_demographics(demo_rng, profile, labels[i] == 1,
                                          bool(labeled_mask[i]), session_id,
                                          log.tracking_code or ""))
    return Cohort(spec=spec, logs=logs, demographics=demographics, labels=labels,
                  labeled_mask=labeled_mask, profiles=profiles)
