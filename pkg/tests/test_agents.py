import dataclasses

import numpy as np
import pytest

from gamesight.agents import (
    CohortSpec,
    TraitProfile,
    generate_cohort,
    simulate_participant,
)
from gamesight.errors import InputError, LevelError
from gamesight.features import Dataset, extract_features, label_correlations, names
from gamesight.games.core import GameId
from gamesight.solvers import solve_groupswap, solve_sliding


def session_signature(log):
    return [(e.seq, e.timestamp_ms, e.game_id, e.stage_id, e.event_type,
             tuple(sorted(e.payload.items()))) for e in log.events]


def test_same_profile_and_seed_replays_identically(default_pack):
    profile = TraitProfile(0.6, 0.4, 0.5, 0.7, 0.5, 0.4)
    a = simulate_participant(profile, default_pack, seed=321, session_id="p")
    b = simulate_participant(profile, default_pack, seed=321, session_id="p")
    assert session_signature(a) == session_signature(b)
    assert a.tracking_code == b.tracking_code
    c = simulate_participant(profile, default_pack, seed=322, session_id="p")
    assert session_signature(a) != session_signature(c)


def test_all_ones_profile_wins_every_puzzle_optimally_with_zero_surrenders(default_pack):
    log = simulate_participant(TraitProfile.uniform(1.0), default_pack, seed=11,
                               session_id="ace")
    assert not [e for e in log.events if e.event_type == "surrender"]
    assert not [e for e in log.events if e.event_type == "skip"]
    optima = {("group_swap", lv.stage_id): solve_groupswap(lv).optimal_moves
              for lv in default_pack.group_swap}
    optima.update({("sliding_path", lv.stage_id): solve_sliding(lv).optimal_moves
                   for lv in default_pack.sliding_path})
    wins = [e for e in log.events if e.event_type == "win"
            and e.game_id in (GameId.GROUP_SWAP, GameId.SLIDING_PATH)]
    assert len(wins) == 6
    for event in wins:
        assert event.payload["moves_used"] == optima[(event.game_id.value, event.stage_id)]
    graph_wins = [e for e in log.events
                  if e.event_type == "win" and e.game_id is GameId.GRAPH]
    assert len(graph_wins) == len(default_pack.graph)


def test_all_zero_profile_gives_up_with_probability_one_at_expiry(default_pack):
    log = simulate_participant(TraitProfile.uniform(0.0), default_pack, seed=12,
                               session_id="min")
    expiries = [i for i, e in enumerate(log.events) if e.event_type == "time_expired"]
    assert expiries
    # at persistence 0 the give-up threshold is 1.0: every expiry prompt ends
    # the stage immediately in a skip or a surrender
    for i in expiries:
        assert log.events[i + 1].event_type in ("skip", "surrender"), log.events[i + 1]
        assert log.events[i + 1].stage_id == log.events[i].stage_id


def test_surrender_count_never_increases_with_persistence(default_pack):
    base = dict(thinking=0.25, information_seeking=0.5, help_seeking=0.5,
                time_management=0.3, adaptability=0.4)
    for seed in (5, 6):
        counts = []
        for persistence in (0.05, 0.3, 0.6, 0.9):
            log = simulate_participant(TraitProfile(persistence=persistence, **base),
                                       default_pack, seed=seed, session_id="m")
            counts.append(sum(1 for e in log.events if e.event_type == "surrender"))
        assert counts == sorted(counts, reverse=True), counts


def test_unsolvable_level_raises(default_pack):
    from gamesight.games.groupswap import GroupSwapLevel
    from gamesight.games.core import GridPos
    bad = GroupSwapLevel(stage_id="bad", rows=1, cols=3,
                         group_a_cells=frozenset({GridPos(0, 0)}),
                         group_b_cells=frozenset({GridPos(0, 2)}),
                         move_limit=9, time_limit_s=10)
    pack = dataclasses.replace(default_pack, group_swap=(bad,))
    with pytest.raises(LevelError):
        simulate_participant(TraitProfile.uniform(0.5), pack, seed=1)


def test_cohort_shape_matches_study_scale(default_pack):
    spec = CohortSpec(n_participants=132, labeled_count=39, seed=3)
    cohort = generate_cohort(spec, default_pack)
    assert len(cohort.logs) == 132
    assert len(cohort.demographics) == 132
    assert cohort.labeled_mask.sum() == 39
    assert set(np.unique(cohort.labels)) == {0, 1}
    # stratified: both classes appear in the labeled subset
    labeled = cohort.labels[cohort.labeled_mask]
    assert 0 < labeled.sum() < 39


def test_even_fraction_splits_exactly(default_pack):
    spec = CohortSpec(n_participants=10, suitable_fraction=0.5, labeled_count=4, seed=2)
    cohort = generate_cohort(spec, default_pack)
    assert cohort.labels.sum() == 5


def test_cohort_replay_identical(default_pack):
    spec = CohortSpec(n_participants=6, labeled_count=4, seed=9)
    a = generate_cohort(spec, default_pack)
    b = generate_cohort(spec, default_pack)
    assert np.array_equal(a.labels, b.labels)
    assert np.array_equal(a.labeled_mask, b.labeled_mask)
    assert a.demographics == b.demographics
    for log_a, log_b in zip(a.logs, b.logs):
        assert session_signature(log_a) == session_signature(log_b)


def test_degenerate_cohort_spec_rejected():
    with pytest.raises(InputError):
        CohortSpec(n_participants=0)
    with pytest.raises(InputError):
        CohortSpec(suitable_fraction=1.0)
    with pytest.raises(InputError):
        CohortSpec(labeled_count=200, n_participants=100)


def test_demographics_consistent_with_profiles(default_pack):
    spec = CohortSpec(n_participants=60, labeled_count=10, seed=21)
    cohort = generate_cohort(spec, default_pack)
    thinking = np.array([p.thinking for p in cohort.profiles])
    is_t = np.array([d["MBTI Thinking-Feeling"] == "T" for d in cohort.demographics])
    # thinking >= 0.5 maps to T with probability 0.8
    assert is_t[thinking >= 0.5].mean() > 0.6
    assert is_t[thinking < 0.5].mean() < 0.4
    for d in cohort.demographics:
        assert d["MBTI Personality Type"] == (d["MBTI Extraversion-Introversion"]
                                              + d["MBTI Sensing-Intuition"]
                                              + d["MBTI Thinking-Feeling"]
                                              + d["MBTI Judging-Perceiving"])
        assert d["MBTI SJ Functional Group"] == int(
            d["MBTI Sensing-Intuition"] == "S" and d["MBTI Judging-Perceiving"] == "J")


@pytest.mark.slow
def test_correlation_signs_on_well_separated_cohort(default_pack):
    cohort = generate_cohort(CohortSpec(n_participants=110, labeled_count=30, seed=404),
                             default_pack)
    rows = [extract_features(log, demo)
            for log, demo in zip(cohort.logs, cohort.demographics)]
    ds = Dataset(names(), rows, [int(v) for v in cohort.labels])
    correlations = dict(label_correlations(ds, threshold=0.25))
    expected_signs = {
        "Total Puzzle Win Count": 1,
        "Total Side Challenge Completion Count": 1,
        "Total Menu Navigation Count": 1,
        "Total Gameplay Pause Count": -1,
        "Total Game Restart Count": -1,
        "Total Surrender Action Count": -1,
    }
    for feature, sign in expected_signs.items():
        assert feature in correlations, f"{feature} below |r|=0.25"
        assert np.sign(correlations[feature]) == sign, (feature, correlations[feature])
