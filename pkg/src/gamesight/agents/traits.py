"""Trait profiles and cohort specifications for synthetic players."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InputError

TRAIT_NAMES = ("thinking", "information_seeking", "help_seeking",
               "time_management", "persistence", "adaptability")


@dataclass(frozen=True)
class TraitProfile:
    thinking: float
    information_seeking: float
    help_seeking: float
    time_management: float
    persistence: float
    adaptability: float

    def __post_init__(self):
        for name in TRAIT_NAMES:
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise InputError(f"trait {name} must be in [0,1], got {v}")

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, n) for n in TRAIT_NAMES)

    @classmethod
    def uniform(cls, value: float) -> "TraitProfile":
        return cls(*([value] * len(TRAIT_NAMES)))


# Class-conditional trait means: the suitable class is higher on thinking,
# time management and persistence (the reported suitability signatures), and
# moderately higher on help/information seeking (developer-trait list);
# adaptability stays class-neutral.
DEFAULT_SUITABLE_MEANS = TraitProfile(
    thinking=0.78, information_seeking=0.60, help_seeking=0.70,
    time_management=0.76, persistence=0.78, adaptability=0.5)
DEFAULT_UNSUITABLE_MEANS = TraitProfile(
    thinking=0.24, information_seeking=0.42, help_seeking=0.30,
    time_management=0.26, persistence=0.28, adaptability=0.5)


@dataclass(frozen=True)
class CohortSpec:
    n_participants: int = 132
    suitable_fraction: float = 0.6
    labeled_count: int = 39
    profile_noise_sd: float = 0.095
    suitable_means: TraitProfile = field(default=DEFAULT_SUITABLE_MEANS)
    unsuitable_means: TraitProfile = field(default=DEFAULT_UNSUITABLE_MEANS)
    withhold_rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n_participants <= 0:
            raise InputError("n_participants must be positive")
        if not 0.0 < self.suitable_fraction < 1.0:
            raise InputError("suitable_fraction must be in (0,1)")
        if not 0 <= self.labeled_count <= self.n_participants:
            raise InputError("labeled_count must be within the cohort size")
