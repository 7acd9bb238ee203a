"""The gameplay variable catalog: names, types, roles, enum domains.

The catalog is the single authority for feature names and ordering.  It holds
the full published variable list verbatim plus a documented supplementary
block: the shooter stage duration (denominator of the per-minute ratios),
pause-inclusive duration variants, session-wide totals used by the
correlation report (puzzle wins, side challenges, menu navigation,
surrenders, skip spending), and one undefined-denominator flag per derived
ratio (the 0/0 convention keeps ratio columns dense while the flag preserves
the information).  A CSV copy ships as package data and is asserted against
this module in the test suite.

Roles:

* ``identity``       join keys, never modeled
* ``questionnaire``  demographic / self-report / MBTI fields
* ``label``          the suitability label column
* ``behavioral``     extracted from gameplay events only
* ``derived``        ratio of behavioral base fields
* ``derived_flag``   undefined-denominator companion of one derived ratio
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

MBTI_TYPES = tuple(e + s + t + j for e in "EI" for s in "SN" for t in "TF" for j in "JP")


@dataclass(frozen=True)
class VariableDef:
    name: str
    dtype: str                       # number | bool | enum | string
    role: str
    domain: tuple[str, ...] = ()     # enum domains, in encoding order

    def __post_init__(self):
        if self.dtype == "enum" and not self.domain:
            raise ValueError(f"enum variable {self.name} needs a domain")


def _n(name, role="behavioral"):
    return VariableDef(name, "number", role)


def _b(name, role="behavioral"):
    return VariableDef(name, "bool", role)


_SHOOTER_RATIOS = (
    "Galaxy Shooter Game: Gameplay Logs per Minute",
    "Galaxy Shooter Game: Wins per Minute",
    "Galaxy Shooter Game: Shots per Minute",
    "Galaxy Shooter Game: Shots per Gameplay Log",
    "Galaxy Shooter Game: Lives Lost per Minute",
    "Galaxy Shooter Game: Lives Lost per Gameplay Log",
    "Galaxy Shooter Game: Power-Up Collection Efficiency Ratio",
    "Galaxy Shooter Game: Gold Collection Efficiency Ratio",
    "Galaxy Shooter Game: Enemy Collision Rate",
    "Galaxy Shooter Game: Asteroid Collision Rate",
    "Galaxy Shooter Game: Directional Movement Bias Ratio",
    "Galaxy Shooter Game: Boundary Exit Bias Ratio",
)

CATALOG: tuple[VariableDef, ...] = (
    # -- identity and questionnaire block (published order) -------------------
    VariableDef("Unique Gameplay Tracking Code", "string", "identity"),
    _n("Participant Age", "questionnaire"),
    VariableDef("Participant Gender", "enum", "questionnaire", ("male", "female", "other")),
    _b("Gender Flag: Male", "questionnaire"),
    _b("Gender Flag: Female", "questionnaire"),
    _b("Computer Engineering Background", "questionnaire"),
    VariableDef("MBTI Personality Type", "enum", "questionnaire", MBTI_TYPES),
    VariableDef("MBTI Extraversion-Introversion", "enum", "questionnaire", ("E", "I")),
    VariableDef("MBTI Sensing-Intuition", "enum", "questionnaire", ("S", "N")),
    VariableDef("MBTI Thinking-Feeling", "enum", "questionnaire", ("F", "T")),
    VariableDef("MBTI Judging-Perceiving", "enum", "questionnaire", ("P", "J")),
    _b("MBTI SJ Functional Group", "questionnaire"),
    _b("MBTI SP Functional Group", "questionnaire"),
    _b("MBTI NF Functional Group", "questionnaire"),
    _b("MBTI NT Functional Group", "questionnaire"),
    _b("Confirmed Programming Interest", "questionnaire"),
    _b("Predicted Programming Suitability", "label"),
    _b("Help-Seeking Behavior", "questionnaire"),
    _b("Problem-Solving via Online Search Skill", "questionnaire"),
    _b("Time Management Ability", "questionnaire"),
    _b("Competitive Motivation", "questionnaire"),
    _b("Behavioral Flexibility and Adaptability", "questionnaire"),
    VariableDef("Primary Gaming Platform", "enum", "questionnaire",
                ("phone", "pc", "console", "none")),
    _n("Average Weekly Gameplay Duration", "questionnaire"),
    # -- global gameplay block -------------------------------------------------
    VariableDef("Selected Game Difficulty Level", "enum", "behavioral",
                ("easy", "normal", "hard")),
    _n("Total Gameplay Log Count"),
    _n("Total Gameplay Duration in Minutes"),
    _n("Total Gameplay Pause Count"),
    _n("Total Game Restart Count"),
    _n("Group-Swapping Puzzle Game: Log Count"),
    _n("Group-Swapping Puzzle Game: Gameplay Duration in Minutes"),
    _n("Group-Swapping Puzzle Game: Skip Token Usage Count"),
    _n("Group-Swapping Puzzle Game: Surrender Action Count"),
    _n("Obstacle-Rearrangement Path Game: Log Count"),
    _n("Obstacle-Rearrangement Path Game: Gameplay Duration in Minutes"),
    _n("Memory Matching Game: Log Count"),
    _n("Memory Matching Game: Gameplay Duration in Minutes"),
    _n("Memory Matching Game: Total Guess Count"),
    _n("Memory Matching Game: Correct Guess Count"),
    _n("Memory Matching Game: Incorrect Guess Count"),
    _n("Tutorial Engagement Count"),
    _n("Tutorial Skipping Count"),
    _n("Quiz Navigation Interaction Count"),
    # -- shooter block -----------------------------------------------------------
    _n("Galaxy Shooter Game: Gameplay Log Count"),
    _n("Galaxy Shooter Game: Maximum Score Achieved"),
    _n("Galaxy Shooter Game: Total Shots Fired"),
    _n("Galaxy Shooter Game: Total Lives Lost"),
    _n("Galaxy Shooter Game: Restart Count"),
    _n("Galaxy Shooter Game: Power-Ups Generated"),
    _n("Galaxy Shooter Game: Power-Ups Collected"),
    _n("Galaxy Shooter Game: Gold Generated"),
    _n("Galaxy Shooter Game: Gold Collected"),
    _n("Galaxy Shooter Game: Gold Lost"),
    _n("Galaxy Shooter Game: Gold Exploded"),
    _n("Galaxy Shooter Game: Enemies Generated"),
    _n("Galaxy Shooter Game: Enemies Destroyed by Shooting"),
    _n("Galaxy Shooter Game: Enemy Collisions with Player"),
    _n("Galaxy Shooter Game: Asteroids Generated"),
    _n("Galaxy Shooter Game: Asteroids Destroyed by Shooting"),
    _n("Galaxy Shooter Game: Asteroid Collisions with Player"),
    _n("Galaxy Shooter Game: Leftward Movement Count"),
    _n("Galaxy Shooter Game: Rightward Movement Count"),
    _n("Galaxy Shooter Game: Total Horizontal Movement Count"),
    _n("Galaxy Shooter Game: Left Boundary Exit Count"),
    _n("Galaxy Shooter Game: Right Boundary Exit Count"),
    _n("Galaxy Shooter Game: Total Boundary Exit Count"),
    _b("Galaxy Shooter Game: Life Survival Challenge Completed"),
    _b("Galaxy Shooter Game: Enemy Elimination Challenge Completed"),
    _b("Galaxy Shooter Game: Asteroid Destruction Challenge Completed"),
    _b("Galaxy Shooter Game: Gold Collection Challenge Completed"),
    _b("Galaxy Shooter Game: No-Weapon Usage Challenge Completed"),
    _b("Galaxy Shooter Game: Score Achievement Challenge Completed"),
    _n("Graph Traversal Game: Log Count"),
    _n("Graph Traversal Game: Gameplay Duration in Minutes"),
    # -- derived ratios (published) ---------------------------------------------
    *(VariableDef(name, "number", "derived") for name in _SHOOTER_RATIOS),
    # -- supplementary block (documented above) ----------------------------------
    _n("Galaxy Shooter Game: Gameplay Duration in Minutes"),
    _n("Total Puzzle Win Count"),
    _n("Total Side Challenge Attempt Count"),
    _n("Total Side Challenge Completion Count"),
    _n("Total Menu Navigation Count"),
    _n("Total Surrender Action Count"),
    _n("Total Skip Token Usage Count"),
    _n("Total Gameplay Duration Including Pauses in Minutes"),
    *(VariableDef(f"{name} Undefined", "bool", "derived_flag") for name in _SHOOTER_RATIOS),
)

CATALOG_BY_NAME: dict[str, VariableDef] = {v.name: v for v in CATALOG}
assert len(CATALOG_BY_NAME) == len(CATALOG), "duplicate catalog names"

RATIO_FLAG = {name: f"{name} Undefined" for name in _SHOOTER_RATIOS}

LABEL_COLUMN = "suitable"


def names(roles: set[str] | None = None) -> list[str]:
    if roles is None:
        return [v.name for v in CATALOG]
    return [v.name for v in CATALOG if v.role in roles]


def behavioral_names() -> list[str]:
    return names({"behavioral", "derived", "derived_flag"})


def questionnaire_names() -> list[str]:
    return names({"questionnaire"})


def non_behavioral_names() -> list[str]:
    return names({"identity", "questionnaire", "label"})


def write_catalog_csv(path: str | Path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["name", "dtype", "role", "domain"])
        for v in CATALOG:
            writer.writerow([v.name, v.dtype, v.role, "|".join(v.domain)])


def shipped_catalog_path() -> Path:
    return Path(str(resources.files("gamesight").joinpath("data/variable_catalog.csv")))
