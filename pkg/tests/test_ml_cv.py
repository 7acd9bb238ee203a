import numpy as np
import pytest

from gamesight.errors import InputError
from gamesight.ml import (
    CVConfig,
    LeakageAudit,
    ModelSpec,
    PipelineConfig,
    compute_metrics,
    evaluate,
    mean_metrics,
    oversample_random,
    stratified_kfold,
)
from gamesight.ml.report import (
    ReportRow,
    render_reduction_row,
    render_selection_row,
)
from gamesight.ml.metrics import ClassMetrics, Metrics


def test_fold_class_counts_40_rows_10_positive():
    y = np.array([1] * 10 + [0] * 30)
    folds = stratified_kfold(y, 5, seed=1)
    for fold in folds:
        assert len(fold) == 8
        assert (y[fold] == 1).sum() == 2
        assert (y[fold] == 0).sum() == 6


def test_folds_partition_all_rows_disjointly():
    y = np.array([0, 1] * 17)
    folds = stratified_kfold(y, 4, seed=3)
    flat = np.concatenate(folds)
    assert sorted(flat.tolist()) == list(range(34))
    for i in range(len(folds)):
        for j in range(i + 1, len(folds)):
            assert not set(folds[i]) & set(folds[j])


def test_same_seed_reproduces_folds_different_seed_differs():
    y = np.array([0] * 20 + [1] * 20)
    a = stratified_kfold(y, 5, seed=7)
    b = stratified_kfold(y, 5, seed=7)
    c = stratified_kfold(y, 5, seed=8)
    assert all(np.array_equal(x, z) for x, z in zip(a, b))
    assert any(not np.array_equal(x, z) for x, z in zip(a, c))


def test_k_exceeding_minority_count_rejected():
    y = np.array([1] * 3 + [0] * 30)
    with pytest.raises(InputError):
        stratified_kfold(y, 5, seed=0)
    with pytest.raises(InputError):
        stratified_kfold(y, 1, seed=0)


def test_oversample_balances_8_24():
    y = np.array([1] * 8 + [0] * 24)
    augmented = oversample_random(np.arange(32), y, seed=2)
    counts = {c: int((y[augmented] == c).sum()) for c in (0, 1)}
    assert counts == {0: 24, 1: 24}
    assert set(augmented) <= set(range(32))


def test_oversample_balanced_input_unchanged():
    y = np.array([0, 1] * 10)
    idx = np.arange(20)
    assert np.array_equal(oversample_random(idx, y, seed=5), idx)


def test_oversample_never_touches_validation_rows():
    y = np.array([1] * 10 + [0] * 30)
    folds = stratified_kfold(y, 5, seed=11)
    all_idx = np.arange(40)
    for fold_i, val in enumerate(folds):
        train = np.setdiff1d(all_idx, val)
        augmented = oversample_random(train, y, seed=fold_i)
        assert not set(augmented) & set(val)


# -- metrics --------------------------------------------------------------------

def brute_force_metrics(y_true, y_pred):
    counts = {}
    for c in (0, 1):
        tp = fp = fn = 0
        for t, p in zip(y_true, y_pred):
            if p == c and t == c:
                tp += 1
            elif p == c and t != c:
                fp += 1
            elif p != c and t == c:
                fn += 1
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        counts[c] = (precision, recall, f1)
    accuracy = sum(int(t == p) for t, p in zip(y_true, y_pred)) / len(y_true)
    macro = tuple(sum(counts[c][i] for c in (0, 1)) / 2 for i in range(3))
    return accuracy, macro


def test_confusion_example_tp3_fp1_fn1_tn5():
    y_true = [1, 1, 1, 1, 0, 0, 0, 0, 0, 0]
    y_pred = [1, 1, 1, 0, 1, 0, 0, 0, 0, 0]
    m = compute_metrics(y_true, y_pred)
    assert m.accuracy == pytest.approx(0.8)
    assert m.per_class[1].precision == pytest.approx(0.75)
    assert m.per_class[1].recall == pytest.approx(0.75)


def test_metrics_match_brute_force_on_random_vectors():
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = int(rng.integers(2, 40))
        y_true = rng.integers(0, 2, size=n)
        y_pred = rng.integers(0, 2, size=n)
        m = compute_metrics(y_true, y_pred)
        accuracy, (precision, recall, f1) = brute_force_metrics(y_true, y_pred)
        assert m.accuracy == accuracy
        assert m.precision == precision
        assert m.recall == recall
        assert m.f1 == f1


def test_micro_averaging_equals_accuracy_for_binary():
    rng = np.random.default_rng(1)
    y_true = rng.integers(0, 2, size=50)
    y_pred = rng.integers(0, 2, size=50)
    m = compute_metrics(y_true, y_pred, average="micro")
    assert m.precision == m.recall == m.f1 == m.accuracy


def test_mean_metrics_averages_folds():
    a = compute_metrics([0, 1], [0, 1])
    b = compute_metrics([0, 1], [1, 0])
    mean = mean_metrics([a, b])
    assert mean.accuracy == pytest.approx(0.5)


# -- evaluate ---------------------------------------------------------------------

def separable_data(n=50):
    rng = np.random.default_rng(12)
    X = np.vstack([rng.normal(-2, 0.3, size=(n, 3)), rng.normal(2, 0.3, size=(n, 3))])
    y = np.array([0] * n + [1] * n)
    perm = rng.permutation(2 * n)
    return X[perm], y[perm]


def test_perfect_separation_gives_all_ones():
    X, y = separable_data()
    row = evaluate(ModelSpec("logistic_regression", {}), X, y, CVConfig(k=5, seed=3))
    assert row.metrics.as_tuple() == (1.0, 1.0, 1.0, 1.0)
    assert len(row.per_fold) == 5
    assert row.train_gap == pytest.approx(0.0)


def test_headline_metrics_are_fold_means():
    X, y = separable_data()
    X[:4] = -X[:4]  # inject a few hard rows
    row = evaluate(ModelSpec("logistic_regression", {}), X, y,
                   CVConfig(k=5, seed=3, oversample=True))
    assert row.metrics.accuracy == pytest.approx(
        np.mean([m.accuracy for m in row.per_fold]))


def test_full_evaluate_audit_is_clean_for_all_pipelines():
    X, y = separable_data(30)
    audit = LeakageAudit()
    pipelines = [
        PipelineConfig(),
        PipelineConfig(strategy="selection", strategy_name="univariate", k_features=2),
        PipelineConfig(strategy="selection", strategy_name="rfe", k_features=2),
        PipelineConfig(strategy="reduction", strategy_name="lda"),
        PipelineConfig(strategy="reduction", strategy_name="pca", n_components=2),
    ]
    for i, pipeline in enumerate(pipelines):
        evaluate(ModelSpec("logistic_regression", {}), X, y,
                 CVConfig(k=5, seed=i, oversample=True), pipeline, audit=audit,
                 cell_id=f"cell{i}")
    assert audit.violations() == []
    audit.assert_clean()
    ops = {record[2] for record in audit.fit_records}
    assert {"scaler", "oversampler", "trainer:logistic_regression",
            "selector:univariate", "reducer:lda", "reducer:pca"} <= ops


def test_audit_detects_injected_leak():
    audit = LeakageAudit()
    audit.note_validation("cell", 0, [1, 2, 3])
    audit.note_fit("cell", 0, "scaler", [3, 4, 5])
    assert audit.violations()
    with pytest.raises(AssertionError):
        audit.assert_clean()


def _row(algorithm, strategy, strategy_name, n_features, oversample, values):
    accuracy, precision, recall, f1 = values
    metrics = Metrics(accuracy, precision, recall, f1,
                      {0: ClassMetrics(0, 0, 0, 0), 1: ClassMetrics(0, 0, 0, 0)})
    return ReportRow(algorithm=algorithm, strategy=strategy, strategy_name=strategy_name,
                     n_features=n_features, oversample=oversample, metrics=metrics)


def test_reduction_row_renders_in_published_layout():
    row = _row("MLP", "reduction", "lda", 1, True, (0.94, 0.97, 0.84, 0.88))
    assert render_reduction_row(row) == "MLP Oversample | LDA | 0.97 | 0.94 | 0.84 | 0.88"


def test_selection_row_renders_with_feature_count_and_dashes():
    row = _row("Random Forest", "selection", "rfe", 15, False, (0.88, 0.94, 0.67, 0.72))
    assert render_selection_row(row) == \
        "Random Forest | Recursive Feature Elimination | 15 | 0.94 | 0.88 | 0.67 | 0.72"
    row2 = _row("Random Forest", "selection", "by_correlation", None, False,
                (0.88, 0.94, 0.67, 0.72))
    assert render_selection_row(row2) == \
        "Random Forest | Based on Correlation | -- | 0.94 | 0.88 | 0.67 | 0.72"
