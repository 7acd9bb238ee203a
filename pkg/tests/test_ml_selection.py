import numpy as np
import pytest

from gamesight.errors import InputError
from gamesight.ml import ModelSpec, select
from gamesight.ml.select import STRATEGIES


def test_label_duplicated_as_feature_ranks_first_under_every_strategy():
    rng = np.random.default_rng(0)
    y = (rng.random(120) < 0.5).astype(int)
    X = np.column_stack([rng.normal(size=120), y.astype(float), rng.normal(size=120),
                         rng.normal(size=120)])
    for strategy in STRATEGIES:
        assert select(strategy, X, y, k_features=1) == [1], strategy


def test_univariate_finds_single_informative_among_noise():
    rng = np.random.default_rng(7)
    n = 300
    y = (rng.random(n) < 0.5).astype(int)
    noise = rng.normal(size=(n, 9))
    informative = y * 2.0 + rng.normal(scale=0.5, size=n)
    X = np.column_stack([noise[:, :4], informative, noise[:, 4:]])
    assert select("univariate", X, y, k_features=1) == [4]


def test_rfe_returns_requested_count_and_runs_stepwise():
    rng = np.random.default_rng(1)
    n, d = 80, 40
    y = (rng.random(n) < 0.5).astype(int)
    X = rng.normal(size=(n, d))
    X[:, 3] += y * 3
    X[:, 17] += y * 2
    chosen = select("rfe", X, y, k_features=15)
    assert len(chosen) == 15
    assert chosen == sorted(chosen)
    assert 3 in chosen and 17 in chosen


def test_by_correlation_threshold_mode():
    rng = np.random.default_rng(2)
    n = 200
    y = (rng.random(n) < 0.5).astype(int)
    strong = y + rng.normal(scale=0.3, size=n)
    weak = rng.normal(size=n)
    X = np.column_stack([weak, strong, weak * 0.5 + rng.normal(size=n)])
    chosen = select("by_correlation", X, y, threshold=0.5)
    assert chosen == [1]
    # threshold too high for every feature: falls back to the single best
    assert select("by_correlation", X, y, threshold=0.999) == [1]


def test_deterministic_tie_break_by_column_order():
    y = np.array([0, 0, 1, 1] * 10)
    col = y.astype(float)
    X = np.column_stack([col, col.copy(), col.copy()])
    assert select("by_correlation", X, y, k_features=2) == [0, 1]
    assert select("univariate", X, y, k_features=1) == [0]


def test_k_out_of_range_rejected():
    X = np.zeros((10, 3))
    y = np.array([0, 1] * 5)
    with pytest.raises(InputError):
        select("univariate", X, y, k_features=4)
    with pytest.raises(InputError):
        select("univariate", X, y, k_features=0)
    with pytest.raises(InputError):
        select("nonsense", X, y, k_features=1)


def test_rf_importance_with_custom_estimator_spec():
    rng = np.random.default_rng(5)
    y = (rng.random(150) < 0.5).astype(int)
    X = rng.normal(size=(150, 6))
    X[:, 2] += 2.5 * y
    chosen = select("rf_importance", X, y, k_features=2,
                    estimator_spec=ModelSpec("random_forest", {"n_trees": 25}))
    assert 2 in chosen
