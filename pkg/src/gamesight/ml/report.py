"""Evaluation reports: CSV emission and aligned text tables.

Text rendering follows the published grid layouts: the label-completion table
(Algorithm | F1 Score | Accuracy | Precision | Recall), the feature-selection
table (Algorithm | Feature Selection | #Features | Precision | Accuracy |
Recall | F1 Score) and the feature-reduction table (Algorithm | Feature
Reduction | Precision | Accuracy | Recall | F1 Score), metrics at two
decimals, oversampled runs suffixed to the algorithm name.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

from .cv import ReportRow

STRATEGY_DISPLAY = {
    "by_correlation": "Based on Correlation",
    "univariate": "Univariate Feature Selection",
    "rfe": "Recursive Feature Elimination",
    "rf_importance": "Random Forest",
    "lda": "LDA",
    "pca": "PCA",
    "": "None",
}


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def render_phase1_row(row: ReportRow) -> str:
    m = row.metrics
    return " | ".join([row.display_algorithm, _fmt(m.f1), _fmt(m.accuracy),
                       _fmt(m.precision), _fmt(m.recall)])


def render_selection_row(row: ReportRow) -> str:
    m = row.metrics
    k = "--" if row.n_features is None else str(row.n_features)
    return " | ".join([row.display_algorithm, STRATEGY_DISPLAY[row.strategy_name], k,
                       _fmt(m.precision), _fmt(m.accuracy), _fmt(m.recall), _fmt(m.f1)])


def render_reduction_row(row: ReportRow) -> str:
    m = row.metrics
    return " | ".join([row.display_algorithm, STRATEGY_DISPLAY[row.strategy_name],
                       _fmt(m.precision), _fmt(m.accuracy), _fmt(m.recall), _fmt(m.f1)])


def _table(header: list[str], lines: list[str]) -> str:
    head = " | ".join(header)
    return "\n".join([head, "-" * len(head), *lines])


def render_phase1_table(rows: list[ReportRow]) -> str:
    return _table(["Algorithm", "F1 Score", "Accuracy", "Precision", "Recall"],
                  [render_phase1_row(r) for r in rows])


def render_selection_table(rows: list[ReportRow]) -> str:
    return _table(["Algorithm", "Feature Selection", "#Features", "Precision",
                   "Accuracy", "Recall", "F1 Score"],
                  [render_selection_row(r) for r in rows])


def render_reduction_table(rows: list[ReportRow]) -> str:
    return _table(["Algorithm", "Feature Reduction", "Precision", "Accuracy",
                   "Recall", "F1 Score"],
                  [render_reduction_row(r) for r in rows])


_CSV_HEADER = ["algorithm", "strategy", "strategy_name", "n_features", "oversample",
               "accuracy", "precision", "recall", "f1", "train_gap",
               "fold_accuracies", "fold_precisions", "fold_recalls", "fold_f1s",
               "selected_features"]


def rows_to_csv(rows: list[ReportRow], path: str | Path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(_CSV_HEADER)
        for r in rows:
            m = r.metrics
            writer.writerow([
                r.display_algorithm,
                r.strategy,
                r.strategy_name,
                "" if r.n_features is None else r.n_features,
                int(r.oversample),
                f"{m.accuracy:.6f}", f"{m.precision:.6f}", f"{m.recall:.6f}",
                f"{m.f1:.6f}", f"{r.train_gap:.6f}",
                ";".join(f"{fm.accuracy:.6f}" for fm in r.per_fold),
                ";".join(f"{fm.precision:.6f}" for fm in r.per_fold),
                ";".join(f"{fm.recall:.6f}" for fm in r.per_fold),
                ";".join(f"{fm.f1:.6f}" for fm in r.per_fold),
                ";".join(r.selected_features),
            ])


@dataclass
class EvaluationReport:
    selection_rows: list[ReportRow] = field(default_factory=list)
    reduction_rows: list[ReportRow] = field(default_factory=list)

    @property
    def all_rows(self) -> list[ReportRow]:
        return [*self.selection_rows, *self.reduction_rows]

    def ranked(self) -> list[ReportRow]:
        order = {id(r): i for i, r in enumerate(self.all_rows)}
        return sorted(self.all_rows,
                      key=lambda r: (-r.metrics.accuracy, -r.metrics.f1,
                                     -r.metrics.precision, -r.metrics.recall,
                                     order[id(r)]))

    def best(self) -> ReportRow:
        return self.ranked()[0]

    def best_where(self, strategy_name: str) -> ReportRow | None:
        rows = [r for r in self.ranked() if r.strategy_name == strategy_name]
        return rows[0] if rows else None

    def render(self) -> str:
        parts = []
        if self.selection_rows:
            ranked = [r for r in self.ranked() if r.strategy == "selection"]
            parts.append("Gameplay-based suitability prediction using feature selection")
            parts.append(render_selection_table(ranked))
        if self.reduction_rows:
            ranked = [r for r in self.ranked() if r.strategy == "reduction"]
            parts.append("")
            parts.append("Gameplay-based suitability prediction using feature reduction")
            parts.append(render_reduction_table(ranked))
        return "\n".join(parts)

    def to_csv(self, path: str | Path) -> None:
        rows_to_csv(self.ranked(), path)
