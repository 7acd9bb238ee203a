"""Two-phase modeling: classifiers, selection, reduction, CV, metrics, reports."""

from .cv import (
    CVConfig,
    LeakageAudit,
    PipelineConfig,
    ReportRow,
    evaluate,
    oversample_random,
    stratified_kfold,
)
from .metrics import ClassMetrics, Metrics, compute_metrics, mean_metrics
from .models import (
    MODEL_KINDS,
    GBMStumps,
    LinearSVM,
    LogisticRegression,
    MLP,
    ModelSpec,
    RandomForest,
    build_model,
    predict,
    predict_score,
    train,
)
from .phases import (
    DEFAULT_GRID_MODELS,
    GridConfig,
    PERSONALITY_FEATURES_DEFAULT,
    PHASE1_MODEL_GRID,
    Phase1Result,
    assert_behavioral_only,
    phase1_complete_labels,
    phase2_grid,
)
from .reduce import LDAReducer, PCAReducer, fisher_direction, reduce_lda, reduce_pca
from .report import (
    EvaluationReport,
    render_phase1_table,
    render_reduction_row,
    render_reduction_table,
    render_selection_row,
    render_selection_table,
    rows_to_csv,
)
from .select import STRATEGIES, select

__all__ = [
    "CVConfig", "LeakageAudit", "PipelineConfig", "ReportRow", "evaluate",
    "oversample_random", "stratified_kfold",
    "ClassMetrics", "Metrics", "compute_metrics", "mean_metrics",
    "MODEL_KINDS", "GBMStumps", "LinearSVM", "LogisticRegression", "MLP",
    "ModelSpec", "RandomForest", "build_model", "predict", "predict_score", "train",
    "DEFAULT_GRID_MODELS", "GridConfig", "PERSONALITY_FEATURES_DEFAULT",
    "PHASE1_MODEL_GRID", "Phase1Result", "assert_behavioral_only",
    "phase1_complete_labels", "phase2_grid",
    "LDAReducer", "PCAReducer", "fisher_direction", "reduce_lda", "reduce_pca",
    "EvaluationReport", "render_phase1_table", "render_reduction_row",
    "render_reduction_table", "render_selection_row", "render_selection_table",
    "rows_to_csv",
    "STRATEGIES", "select",
]
