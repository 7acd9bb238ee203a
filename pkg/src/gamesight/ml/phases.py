"""The two-phase modeling framework.

Phase 1 completes missing suitability labels from personality/self-report
features: the model grid is cross-validated on the labeled subset, the best
model by accuracy (ties to Random Forest, then grid order) is retrained on
all labeled rows and predicts the rest; inferred labels are marked as such.

Phase 2 predicts suitability from gameplay-derived behavioral features only
(questionnaire/identity/label columns are rejected) across the selection and
reduction grids, with and without fold-local oversampling.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ContaminationError, DegenerateLabelsError, InputError
from ..features.catalog import non_behavioral_names
from ..features.dataset import Dataset, encode
from .cv import CVConfig, LeakageAudit, PipelineConfig, ReportRow, evaluate, _MatrixScaler
from .models import ModelSpec, build_model
from .report import EvaluationReport

PERSONALITY_FEATURES_DEFAULT = (
    "MBTI Thinking-Feeling",
    "MBTI Extraversion-Introversion",
    "MBTI Sensing-Intuition",
    "MBTI Judging-Perceiving",
    "Help-Seeking Behavior",
    "Time Management Ability",
)

PHASE1_MODEL_GRID: tuple[tuple[str, ModelSpec], ...] = (
    ("Random Forest", ModelSpec("random_forest", {"n_trees": 60})),
    ("MLP-64h", ModelSpec("mlp", {"hidden_layers": [64], "l2": 1e-3})),
    ("MLP-22-63h", ModelSpec("mlp", {"hidden_layers": [22, 63], "l2": 1e-3})),
    ("SVM", ModelSpec("linear_svm", {})),
    ("Logistic Regression", ModelSpec("logistic_regression", {})),
    ("GBM", ModelSpec("gbm_stumps", {"rounds": 120})),
)

DEFAULT_GRID_MODELS: tuple[tuple[str, ModelSpec], ...] = (
    ("Random Forest", ModelSpec("random_forest", {"n_trees": 60})),
    ("MLP-64h", ModelSpec("mlp", {"hidden_layers": [64]})),
    ("Logistic Regression", ModelSpec("logistic_regression", {})),
    ("GBM", ModelSpec("gbm_stumps", {"rounds": 120})),
)


@dataclass(frozen=True)
class GridConfig:
    models: tuple[tuple[str, ModelSpec], ...] = DEFAULT_GRID_MODELS
    selection_strategies: tuple[str, ...] = ("by_correlation", "univariate", "rfe",
                                             "rf_importance")
    k_values: tuple[int, ...] = (5, 10, 15)
    correlation_threshold: float = 0.25
    reductions: tuple[str, ...] = ("lda", "pca")
    pca_components: int = 10
    oversample_options: tuple[bool, ...] = (False, True)
    k_folds: int = 5

    def cell_count(self) -> int:
        selection = sum(1 if s == "by_correlation" else len(self.k_values)
                        for s in self.selection_strategies)
        return (selection + len(self.reductions)) \
            * len(self.models) * len(self.oversample_options)


@dataclass
class Phase1Result:
    rows: list[ReportRow]
    best_algorithm: str
    dataset: Dataset            # labels completed
    inferred_count: int
    held_out_accuracy: float    # CV accuracy of the selected model


def _cell_seed(base_seed: int, index: int) -> int:
    return int(np.random.SeedSequence([int(base_seed) & (2**64 - 1), 11, index])
               .generate_state(1)[0])


def phase1_complete_labels(ds: Dataset,
                           feature_names: tuple[str, ...] = PERSONALITY_FEATURES_DEFAULT,
                           k_folds: int = 5, seed: int = 0,
                           model_grid: tuple[tuple[str, ModelSpec], ...] = PHASE1_MODEL_GRID,
                           audit: LeakageAudit | None = None) -> Phase1Result:
    missing = [n for n in feature_names if n not in ds.feature_names]
    if missing:
        raise InputError(f"personality features absent from dataset: {missing}")
    labeled = [i for i, y in enumerate(ds.labels) if y is not None]
    if not labeled:
        raise InputError("phase 1 needs at least one labeled row")
    y_l = np.array([ds.labels[i] for i in labeled], dtype=int)
    if len(set(y_l.tolist())) < 2:
        raise DegenerateLabelsError("labeled subset holds a single class")

    X_all, _ = encode(ds, list(feature_names))
    if np.isnan(X_all[labeled]).any():
        raise InputError("personality features missing for labeled rows")
    X_l = X_all[labeled]

    rows: list[ReportRow] = []
    for i, (name, spec) in enumerate(model_grid):
        cell_seed = _cell_seed(seed, i)
        cv = CVConfig(k=k_folds, oversample=False, seed=cell_seed)
        rows.append(evaluate(spec.with_seed(cell_seed), X_l, y_l, cv,
                             PipelineConfig(), audit=audit, algorithm_name=name,
                             cell_id=f"phase1/{name}"))

    grid_order = {name: i for i, (name, _) in enumerate(model_grid)}
    best = sorted(rows, key=lambda r: (-round(r.metrics.accuracy, 12),
                                       r.algorithm != "Random Forest",
                                       grid_order[r.algorithm]))[0]
    best_spec = dict(model_grid)[best.algorithm]

    scaler = _MatrixScaler().fit(X_l)
    final = build_model(best_spec.with_seed(_cell_seed(seed, 101))) \
        .fit(scaler.transform(X_l), y_l)

    completed = Dataset(list(ds.feature_names), [dict(r) for r in ds.rows],
                        list(ds.labels), list(ds.label_sources))
    unlabeled = [i for i, y in enumerate(ds.labels) if y is None]
    if unlabeled:
        if np.isnan(X_all[unlabeled]).any():
            raise InputError("personality features missing for unlabeled rows")
        predictions = final.predict(scaler.transform(X_all[unlabeled]))
        for row_i, pred in zip(unlabeled, predictions):
            completed.labels[row_i] = int(pred)
            completed.label_sources[row_i] = "inferred"
    for i in range(completed.n_rows):
        if "Predicted Programming Suitability" in completed.rows[i]:
            completed.rows[i]["Predicted Programming Suitability"] = bool(completed.labels[i])
    return Phase1Result(rows=rows, best_algorithm=best.algorithm, dataset=completed,
                        inferred_count=len(unlabeled),
                        held_out_accuracy=best.metrics.accuracy)


def assert_behavioral_only(ds: Dataset) -> None:
    forbidden = sorted(set(ds.feature_names) & set(non_behavioral_names()))
    if forbidden:
        raise ContaminationError(forbidden)


def phase2_grid(ds: Dataset, grid: GridConfig = GridConfig(), seed: int = 0,
                audit: LeakageAudit | None = None) -> EvaluationReport:
    assert_behavioral_only(ds)
    if any(y is None for y in ds.labels):
        raise InputError("phase 2 needs complete labels; run phase 1 first")
    X, encoder = encode(ds)
    y = np.array([int(v) for v in ds.labels], dtype=int)
    feature_names = list(encoder.encoded_names)

    report = EvaluationReport()
    cell_index = 0

    def run_cell(name: str, spec: ModelSpec, pipeline: PipelineConfig,
                 oversample: bool) -> ReportRow:
        nonlocal cell_index
        cs = _cell_seed(seed, cell_index)
        cell_index += 1
        cv = CVConfig(k=grid.k_folds, oversample=oversample, seed=cs)
        cell_id = (f"{name}|{pipeline.strategy_name}|{pipeline.k_features}"
                   f"|{pipeline.n_components}|os={int(oversample)}")
        return evaluate(spec.with_seed(cs), X, y, cv, pipeline, audit=audit,
                        feature_names=feature_names, algorithm_name=name,
                        cell_id=cell_id)

    for strategy in grid.selection_strategies:
        k_options: tuple[int | None, ...] = (None,) if strategy == "by_correlation" \
            else grid.k_values
        for k in k_options:
            pipeline = PipelineConfig(
                strategy="selection", strategy_name=strategy, k_features=k,
                threshold=grid.correlation_threshold if strategy == "by_correlation" else None)
            for name, spec in grid.models:
                for oversample in grid.oversample_options:
                    report.selection_rows.append(run_cell(name, spec, pipeline, oversample))

    for reduction in grid.reductions:
        pipeline = PipelineConfig(
            strategy="reduction", strategy_name=reduction,
            n_components=1 if reduction == "lda" else grid.pca_components)
        for name, spec in grid.models:
            for oversample in grid.oversample_options:
                report.reduction_rows.append(run_cell(name, spec, pipeline, oversample))

    return report
