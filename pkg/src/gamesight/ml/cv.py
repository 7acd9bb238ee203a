"""Stratified cross-validation, fold-local oversampling, and the audited
evaluation pipeline.

Every fitting operation inside `evaluate` (scaler, selector, reducer,
oversampler, trainer) reports the original row indices it touched to a
LeakageAudit; the audit asserts that no fitting operation ever saw a row of
its fold's validation set and that oversampling only inflates training folds.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError
from .metrics import Metrics, compute_metrics, mean_metrics
from .models import ModelSpec, build_model
from .reduce import LDAReducer, PCAReducer
from .select import select


@dataclass(frozen=True)
class CVConfig:
    k: int = 5
    oversample: bool = False
    seed: int = 0
    average: str = "macro"  # stratified is always true by construction


def stratified_kfold(y, k: int, seed: int = 0) -> list[np.ndarray]:
    """k disjoint validation index sets; per-class round-robin after a shuffle."""
    y = np.asarray(y, dtype=int)
    if k < 2:
        raise InputError("k must be at least 2")
    class_counts = [int((y == c).sum()) for c in np.unique(y)]
    if k > min(class_counts):
        raise InputError(f"k={k} exceeds the minority class count {min(class_counts)}")
    rng = np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1)]))
    folds: list[list[int]] = [[] for _ in range(k)]
    for c in np.unique(y):
        idx = np.flatnonzero(y == c)
        rng.shuffle(idx)
        for i, row in enumerate(idx):
            folds[i % k].append(int(row))
    return [np.array(sorted(f), dtype=int) for f in folds]


def oversample_random(train_idx, y, seed: int = 0) -> np.ndarray:
    """Duplicate minority training rows (with replacement) until classes balance."""
    train_idx = np.asarray(train_idx, dtype=int)
    y = np.asarray(y, dtype=int)
    yt = y[train_idx]
    classes, counts = np.unique(yt, return_counts=True)
    if classes.size < 2:
        raise InputError("oversampling needs both classes in the training fold")
    if counts[0] == counts[1]:
        return train_idx.copy()
    minority = classes[int(np.argmin(counts))]
    deficit = int(abs(counts[0] - counts[1]))
    pool = train_idx[yt == minority]
    rng = np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), 17]))
    extra = rng.choice(pool, size=deficit, replace=True)
    return np.concatenate([train_idx, extra])


class LeakageAudit:
    """Records (cell, fold, operation, rows-fitted-on) tuples for later assertion."""

    def __init__(self):
        self.fit_records: list[tuple[str, int, str, frozenset]] = []
        self.validation_rows: dict[tuple[str, int], frozenset] = {}

    def note_validation(self, cell: str, fold: int, rows) -> None:
        self.validation_rows[(cell, fold)] = frozenset(int(r) for r in rows)

    def note_fit(self, cell: str, fold: int, op: str, rows) -> None:
        self.fit_records.append((cell, fold, op, frozenset(int(r) for r in rows)))

    def violations(self) -> list[str]:
        out = []
        for cell, fold, op, rows in self.fit_records:
            val = self.validation_rows.get((cell, fold), frozenset())
            hit = rows & val
            if hit:
                out.append(f"{cell} fold {fold}: {op} fitted on validation rows "
                           f"{sorted(hit)[:5]}")
        return out

    def assert_clean(self) -> None:
        problems = self.violations()
        if problems:
            raise AssertionError("; ".join(problems))


class _MatrixScaler:
    """Min-max per column; constants map to 0.5 (mirrors the dataset scaler)."""

    def fit(self, X):
        self.mins = X.min(axis=0)
        self.spans = X.max(axis=0) - self.mins
        return self

    def transform(self, X):
        out = (X - self.mins) / np.where(self.spans == 0, 1.0, self.spans)
        return np.where(self.spans == 0, 0.5, out)


@dataclass(frozen=True)
class PipelineConfig:
    """One grid cell: how features are prepared before the model sees them."""

    strategy: str = "none"              # none | selection | reduction
    strategy_name: str = ""             # by_correlation/univariate/rfe/rf_importance/lda/pca
    k_features: int | None = None
    n_components: int | None = None
    threshold: float | None = None
    estimator_spec: ModelSpec | None = None


@dataclass
class ReportRow:
    algorithm: str
    strategy: str
    strategy_name: str
    n_features: int | None
    oversample: bool
    metrics: Metrics
    per_fold: list[Metrics] = field(default_factory=list)
    train_gap: float = 0.0
    selected_features: list[str] = field(default_factory=list)

    @property
    def display_algorithm(self) -> str:
        return f"{self.algorithm} Oversample" if self.oversample else self.algorithm


def evaluate(model_spec: ModelSpec, X, y, cv: CVConfig,
             pipeline: PipelineConfig = PipelineConfig(),
             audit: LeakageAudit | None = None,
             feature_names: list[str] | None = None,
             algorithm_name: str | None = None,
             cell_id: str | None = None) -> ReportRow:
    """Cross-validated evaluation with fold-local fitting of every component."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if np.isnan(X).any():
        raise InputError("X contains missing values")
    folds = stratified_kfold(y, cv.k, cv.seed)
    all_idx = np.arange(y.size)
    cell = cell_id or f"{model_spec.kind}/{pipeline.strategy_name or 'raw'}"
    fold_metrics: list[Metrics] = []
    gaps: list[float] = []
    chosen_names: list[str] = []

    for fold_i, val_idx in enumerate(folds):
        train_idx = np.setdiff1d(all_idx, val_idx)
        if audit:
            audit.note_validation(cell, fold_i, val_idx)

        scaler = _MatrixScaler().fit(X[train_idx])
        if audit:
            audit.note_fit(cell, fold_i, "scaler", train_idx)
        Xt = scaler.transform(X[train_idx])
        Xv = scaler.transform(X[val_idx])

        if pipeline.strategy == "selection":
            cols = select(pipeline.strategy_name, Xt, y[train_idx],
                          k_features=pipeline.k_features, threshold=pipeline.threshold,
                          estimator_spec=pipeline.estimator_spec,
                          seed=int(np.random.SeedSequence(
                              [cv.seed, 3, fold_i]).generate_state(1)[0]))
            if audit:
                audit.note_fit(cell, fold_i, f"selector:{pipeline.strategy_name}", train_idx)
            Xt, Xv = Xt[:, cols], Xv[:, cols]
            if feature_names and fold_i == 0:
                chosen_names = [feature_names[c] for c in cols]
        elif pipeline.strategy == "reduction":
            if pipeline.strategy_name == "lda":
                reducer = LDAReducer().fit(Xt, y[train_idx])
            elif pipeline.strategy_name == "pca":
                reducer = PCAReducer(pipeline.n_components or 2).fit(Xt)
            else:
                raise InputError(f"unknown reduction {pipeline.strategy_name!r}")
            if audit:
                audit.note_fit(cell, fold_i, f"reducer:{pipeline.strategy_name}", train_idx)
            Xt, Xv = reducer.transform(Xt), reducer.transform(Xv)

        fit_idx = train_idx
        if cv.oversample:
            fit_seed = int(np.random.SeedSequence([cv.seed, 5, fold_i]).generate_state(1)[0])
            fit_idx = oversample_random(train_idx, y, fit_seed)
            if audit:
                audit.note_fit(cell, fold_i, "oversampler", fit_idx)
        pos = np.searchsorted(train_idx, fit_idx)  # positions within the train block
        Xfit, yfit = Xt[pos], y[fit_idx]

        model_seed = int(np.random.SeedSequence(
            [model_spec.seed, 7, fold_i]).generate_state(1)[0])
        model = build_model(model_spec.with_seed(model_seed)).fit(Xfit, yfit)
        if audit:
            audit.note_fit(cell, fold_i, f"trainer:{model_spec.kind}", fit_idx)

        val_pred = model.predict(Xv)
        fold_metrics.append(compute_metrics(y[val_idx], val_pred, cv.average))
        train_pred = model.predict(Xt)
        train_acc = float((train_pred == y[train_idx]).mean())
        gaps.append(train_acc - fold_metrics[-1].accuracy)

    n_features = pipeline.k_features
    if pipeline.strategy == "reduction":
        n_features = 1 if pipeline.strategy_name == "lda" else pipeline.n_components
    elif pipeline.strategy == "none":
        n_features = X.shape[1]
    elif pipeline.strategy == "selection" and n_features is None:
        n_features = len(chosen_names) or None
    return ReportRow(
        algorithm=algorithm_name or model_spec.kind,
        strategy=pipeline.strategy,
        strategy_name=pipeline.strategy_name,
        n_features=n_features,
        oversample=cv.oversample,
        metrics=mean_metrics(fold_metrics),
        per_fold=fold_metrics,
        train_gap=float(np.mean(gaps)),
        selected_features=chosen_names,
    )
