"""Feature selection strategies over encoded matrices.

All strategies break ties deterministically by column order (catalog order
after encoding).  RFE repeatedly drops the lowest-importance 10% of the
surviving features using a fresh estimator per round.
"""
from __future__ import annotations

import math

import numpy as np

from ..errors import InputError
from .models import ModelSpec, build_model

STRATEGIES = ("by_correlation", "univariate", "rfe", "rf_importance")

DEFAULT_RFE_ESTIMATOR = ModelSpec("logistic_regression", {"epochs": 150, "learning_rate": 0.5})
DEFAULT_RF_RANKER = ModelSpec("random_forest", {"n_trees": 40})
RFE_STEP_FRACTION = 0.10


def _abs_correlations(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    Xc = X - X.mean(axis=0)
    yc = y - y.mean()
    sx = np.sqrt((Xc * Xc).sum(axis=0))
    sy = math.sqrt(float((yc * yc).sum()))
    with np.errstate(divide="ignore", invalid="ignore"):
        r = (Xc * yc[:, None]).sum(axis=0) / (sx * sy)
    r[~np.isfinite(r)] = 0.0  # constant columns carry no signal
    return np.abs(r)


def _anova_f(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    """One-way ANOVA F statistic between the two classes, per column."""
    n = y.size
    g0 = X[y == 0]
    g1 = X[y == 1]
    m = X.mean(axis=0)
    between = g0.shape[0] * (g0.mean(axis=0) - m) ** 2 \
        + g1.shape[0] * (g1.mean(axis=0) - m) ** 2
    within = ((g0 - g0.mean(axis=0)) ** 2).sum(axis=0) \
        + ((g1 - g1.mean(axis=0)) ** 2).sum(axis=0)
    df_within = max(n - 2, 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        f = between / (within / df_within)
    f = np.where(within == 0, np.where(between > 0, np.inf, 0.0), f)
    f[np.isnan(f)] = 0.0
    return f


def _top_k(scores: np.ndarray, k: int) -> list[int]:
    order = np.lexsort((np.arange(scores.size), -scores))  # score desc, index asc
    return sorted(int(i) for i in order[:k])


def _estimator_importances(spec: ModelSpec, X: np.ndarray, y: np.ndarray,
                           seed: int) -> np.ndarray:
    model = build_model(spec.with_seed(seed)).fit(X, y)
    importances = getattr(model, "feature_importances_", None)
    if importances is None:
        raise InputError(f"estimator {spec.kind!r} exposes no feature importances")
    return np.asarray(importances, dtype=float)


def select(strategy: str, X, y, k_features: int | None = None,
           threshold: float | None = None,
           estimator_spec: ModelSpec | None = None, seed: int = 0) -> list[int]:
    """Column indices of the selected features, ascending."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    d = X.shape[1]
    if strategy not in STRATEGIES:
        raise InputError(f"unknown selection strategy {strategy!r}")
    if k_features is not None and not 1 <= k_features <= d:
        raise InputError(f"k_features must be in [1, {d}], got {k_features}")

    if strategy == "by_correlation":
        scores = _abs_correlations(X, y)
        if k_features is not None:
            return _top_k(scores, k_features)
        if threshold is None:
            raise InputError("by_correlation needs k_features or a threshold")
        chosen = [int(i) for i in np.flatnonzero(scores > threshold)]
        if not chosen:  # never return an empty feature set
            chosen = _top_k(scores, 1)
        return chosen

    if k_features is None:
        raise InputError(f"{strategy} needs k_features")

    if strategy == "univariate":
        return _top_k(_anova_f(X, y), k_features)

    if strategy == "rf_importance":
        spec = estimator_spec or DEFAULT_RF_RANKER
        return _top_k(_estimator_importances(spec, X, y, seed), k_features)

    # rfe
    spec = estimator_spec or DEFAULT_RFE_ESTIMATOR
    alive = list(range(d))
    round_idx = 0
    while len(alive) > k_features:
        importances = _estimator_importances(spec, X[:, alive], y, seed + round_idx)
        n_drop = min(max(1, int(math.ceil(RFE_STEP_FRACTION * len(alive)))),
                     len(alive) - k_features)
        order = np.lexsort((np.arange(len(alive)), importances))  # weakest first
        doomed = set(int(order[i]) for i in range(n_drop))
        alive = [col for pos, col in enumerate(alive) if pos not in doomed]
        round_idx += 1
    return sorted(alive)
