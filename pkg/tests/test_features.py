import csv
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gamesight.errors import IntegrityError, UndefinedCorrelationError
from gamesight.features import (
    CATALOG,
    Dataset,
    MinMaxScaler,
    drop_low_coverage,
    drop_near_zero_variance,
    encode,
    extract_features,
    names,
    normalize,
    pearson,
    prune_correlated,
    shipped_catalog_path,
)
from gamesight.features.catalog import RATIO_FLAG
from gamesight.games.core import GameId
from gamesight.telemetry import GameEvent, SessionLog


def make_log(specs, session_id="s", difficulty="normal"):
    """specs: list of (timestamp_ms, game_id, stage, event_type, payload)."""
    log = SessionLog(session_id, difficulty=difficulty)
    for seq, (ts, game, stage, etype, payload) in enumerate(specs):
        log.append(GameEvent(session_id, seq, ts, game, stage, etype, payload))
    log.finalize("send")
    return log


def minimal_log():
    return make_log([(0, GameId.META, "", "consent_choice", {"choice": "send"})])


def test_catalog_matches_shipped_csv():
    with open(shipped_catalog_path(), newline="") as f:
        rows = list(csv.DictReader(f))
    assert [(r["name"], r["dtype"], r["role"]) for r in rows] == \
        [(v.name, v.dtype, v.role) for v in CATALOG]


def test_extractor_emits_every_catalog_name_exactly_once():
    vector = extract_features(minimal_log())
    assert list(vector.keys()) == names()


def test_minimal_session_all_counters_zero_ratios_flagged():
    vector = extract_features(minimal_log())
    assert vector["Total Gameplay Log Count"] == 1
    assert vector["Total Gameplay Pause Count"] == 0
    assert vector["Galaxy Shooter Game: Total Shots Fired"] == 0
    for ratio, flag in RATIO_FLAG.items():
        assert vector[ratio] == 0.0
        assert vector[flag] is True
    assert vector["Participant Age"] is None  # demographics absent -> missing


def test_hand_built_script_counts():
    # 2 pauses, 1 restart, 3 shooter shots over exactly one unpaused minute
    minute = 60_000
    specs = [
        (0, GameId.SHOOTER, "1", "tutorial_view", {}),
        (1_000, GameId.SHOOTER, "1", "shot", {"col": 1, "shots_fired": 1}),
        (2_000, GameId.SHOOTER, "1", "pause", {}),
        (10_000, GameId.SHOOTER, "1", "resume", {}),
        (15_000, GameId.SHOOTER, "1", "shot", {"col": 2, "shots_fired": 2}),
        (16_000, GameId.SHOOTER, "1", "restart", {}),
        (17_000, GameId.SHOOTER, "1", "pause", {}),
        (24_000, GameId.SHOOTER, "1", "resume", {}),
        (30_000, GameId.SHOOTER, "1", "shot", {"col": 3, "shots_fired": 1}),
        (minute + 15_000, GameId.SHOOTER, "1", "win",
         {"elapsed_ms": 120_000, "score": 10}),
    ]
    vector = extract_features(make_log(specs))
    assert vector["Total Gameplay Pause Count"] == 2
    assert vector["Total Game Restart Count"] == 1
    assert vector["Galaxy Shooter Game: Restart Count"] == 1
    assert vector["Galaxy Shooter Game: Total Shots Fired"] == 3
    # span 75s minus 8s and 7s of pauses -> exactly 60s of gameplay
    assert vector["Galaxy Shooter Game: Gameplay Duration in Minutes"] == pytest.approx(1.0)
    assert vector["Galaxy Shooter Game: Shots per Minute"] == pytest.approx(3.0)
    assert vector["Total Gameplay Duration Including Pauses in Minutes"] == \
        pytest.approx(1.25)


def test_directional_bias_six_left_two_right():
    specs = [(i * 100, GameId.SHOOTER, "1", "move_accepted",
              {"direction": "left" if i < 6 else "right", "col": 0})
             for i in range(8)]
    vector = extract_features(make_log(specs))
    assert vector["Galaxy Shooter Game: Leftward Movement Count"] == 6
    assert vector["Galaxy Shooter Game: Rightward Movement Count"] == 2
    assert vector["Galaxy Shooter Game: Directional Movement Bias Ratio"] == \
        pytest.approx(6 / 8)
    assert vector[RATIO_FLAG["Galaxy Shooter Game: Directional Movement Bias Ratio"]] \
        is False


def test_ratio_consistency_against_base_fields():
    specs = [
        (0, GameId.SHOOTER, "1", "spawn", {"kind": "gold", "entity": 1, "col": 0}),
        (100, GameId.SHOOTER, "1", "spawn", {"kind": "gold", "entity": 2, "col": 1}),
        (200, GameId.SHOOTER, "1", "collect", {"kind": "gold", "entity": 1}),
        (90_000, GameId.SHOOTER, "1", "lose", {"reason": "lives", "score": 40}),
    ]
    vector = extract_features(make_log(specs))
    assert vector["Galaxy Shooter Game: Gold Collection Efficiency Ratio"] == \
        vector["Galaxy Shooter Game: Gold Collected"] \
        / vector["Galaxy Shooter Game: Gold Generated"]


def test_extraction_requires_finalized_and_gapless_log():
    log = SessionLog("s")
    log.append(GameEvent("s", 0, 0, GameId.META, "", "menu_nav", {"target": "x"}))
    with pytest.raises(IntegrityError):
        extract_features(log)
    log.finalize("send")
    log.events.pop(0)  # simulate corruption after the fact
    log.events.append(GameEvent("s", 5, 9, GameId.META, "", "menu_nav", {"target": "x"}))
    with pytest.raises(IntegrityError):
        extract_features(log)


def test_extraction_deterministic(default_pack):
    from gamesight.agents import TraitProfile, simulate_participant
    log = simulate_participant(TraitProfile.uniform(0.4), default_pack, seed=77)
    assert extract_features(log) == extract_features(log)


# -- preprocessing ---------------------------------------------------------------

def synth_dataset(columns, labels=None):
    feature_names = list(columns)
    n = len(next(iter(columns.values())))
    rows = [{name: columns[name][i] for name in feature_names} for i in range(n)]
    return Dataset(feature_names, rows, labels if labels is not None else [None] * n)


def test_drop_low_coverage_boundary_kept():
    ds = synth_dataset({
        "dense": [1.0] * 10,
        "exactly_70": [1.0] * 7 + [None] * 3,
        "sparse": [1.0] * 2 + [None] * 8,
        "empty": [None] * 10,
    })
    out, removed = drop_low_coverage(ds, 0.7)
    assert out.feature_names == ["dense", "exactly_70"]
    assert {r.feature for r in removed} == {"sparse", "empty"}


def test_drop_near_zero_variance_rules():
    ds = synth_dataset({
        "constant": [3.0] * 8,
        "alternating": [0.0, 1.0] * 4,
        "tiny": [1.0 + 1e-9 * i for i in range(8)],
    })
    out, removed = drop_near_zero_variance(ds, eps=1e-8)
    assert out.feature_names == ["alternating"]
    out0, removed0 = drop_near_zero_variance(synth_dataset({"c": [5.0] * 4,
                                                            "v": [1.0, 2.0, 3.0, 4.0]}),
                                             eps=0.0)
    assert out0.feature_names == ["v"]


def test_near_zero_variance_idempotent():
    ds = synth_dataset({"a": [1.0, 1.0, 1.0], "b": [0.0, 1.0, 2.0]})
    once, _ = drop_near_zero_variance(ds)
    twice, removed = drop_near_zero_variance(once)
    assert twice.feature_names == once.feature_names
    assert removed == []


def test_prune_correlated_drops_later_listed():
    x = list(np.linspace(0, 1, 30))
    ds = synth_dataset({"x": x, "neg_x": [-v for v in x], "dup": list(x),
                        "independent": list(np.sin(np.arange(30) * 7.7))})
    out, removed = prune_correlated(ds, 0.95)
    assert out.feature_names == ["x", "independent"]
    reasons = {r.feature: r.reason for r in removed}
    assert "neg_x" in reasons and "dup" in reasons


def test_independent_random_columns_survive():
    rng = np.random.default_rng(8)
    ds = synth_dataset({f"f{i}": list(rng.normal(size=200)) for i in range(6)})
    out, removed = prune_correlated(ds, 0.95)
    assert removed == []
    assert len(out.feature_names) == 6


def test_normalize_min_max_and_scaler_reapplication():
    ds = synth_dataset({"a": [0.0, 5.0, 10.0], "const": [4.0, 4.0, 4.0]})
    scaled, scaler = normalize(ds)
    assert scaled.column("a") == [0.0, 0.5, 1.0]
    assert scaled.column("const") == [0.5, 0.5, 0.5]
    assert scaler.transform_value("a", 5.0) == 0.5


def test_matrix_scaler_round_trip_within_1e12():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(40, 5)) * np.array([1, 10, 100, 0.1, 3.0])
    scaler = MinMaxScaler().fit(X)
    back = scaler.inverse(scaler.transform(X))
    assert np.max(np.abs(back - X)) < 1e-12


def test_pearson_identities_and_formula_oracle():
    x = np.array([1.0, 2.0, 4.0, 5.0, 7.0])
    y = np.array([2.0, 1.0, 5.0, 4.0, 8.0])
    assert pearson(x, x) == pytest.approx(1.0)
    assert pearson(x, -x) == pytest.approx(-1.0)
    # direct textbook formula as the independent oracle
    mx, my = x.mean(), y.mean()
    oracle = (((x - mx) * (y - my)).sum()
              / math.sqrt(((x - mx) ** 2).sum() * ((y - my) ** 2).sum()))
    assert abs(pearson(x, y) - oracle) < 1e-12
    with pytest.raises(UndefinedCorrelationError):
        pearson(np.ones(5), y)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-1e6, 1e6), min_size=3, max_size=40))
def test_pearson_bounded_when_defined(xs):
    rng = np.random.default_rng(1)
    ys = rng.normal(size=len(xs))
    try:
        r = pearson(np.array(xs), ys)
    except UndefinedCorrelationError:
        return  # effectively-constant input: the error is the contract
    assert -1.0 - 1e-12 <= r <= 1.0 + 1e-12


def test_dataset_csv_round_trip(tmp_path):
    vector = extract_features(minimal_log())
    ds = Dataset(names(), [vector, dict(vector)], [1, None])
    path = tmp_path / "ds.csv"
    ds.to_csv(path)
    loaded = Dataset.from_csv(path)
    assert loaded.feature_names == ds.feature_names
    assert loaded.labels == [1, None]
    loaded.to_csv(tmp_path / "ds2.csv")
    assert (tmp_path / "ds.csv").read_bytes() == (tmp_path / "ds2.csv").read_bytes()


def test_encode_expands_enums_and_bools():
    ds = synth_dataset({"Selected Game Difficulty Level": ["easy", "hard", "normal"],
                        "MBTI Thinking-Feeling": ["T", "F", "T"],
                        "Total Gameplay Pause Count": [1, 2, 3]})
    X, encoder = encode(ds)
    assert encoder.encoded_names == (
        "Selected Game Difficulty Level=easy",
        "Selected Game Difficulty Level=normal",
        "Selected Game Difficulty Level=hard",
        "MBTI Thinking-Feeling=T",
        "Total Gameplay Pause Count")
    assert X[:, 3].tolist() == [1.0, 0.0, 1.0]
