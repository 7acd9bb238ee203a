"""Classification metrics with explicit averaging (macro default, micro optional).

Per-class precision and recall use the zero-convention: an empty denominator
yields 0.  Per-class F1 is the harmonic mean of that class's precision and
recall.  Macro averages weight both classes equally; micro averaging pools
the confusion counts (for single-label binary data it equals accuracy).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InputError

POSITIVE_CLASS = 1  # suitable


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    precision: float
    recall: float
    f1: float
    per_class: dict[int, ClassMetrics]
    average: str = "macro"

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.accuracy, self.precision, self.recall, self.f1)


def _safe_div(a: float, b: float) -> float:
    return a / b if b else 0.0


def compute_metrics(y_true, y_pred, average: str = "macro") -> Metrics:
    y_true = np.asarray(y_true, dtype=int)
    y_pred = np.asarray(y_pred, dtype=int)
    if y_true.shape != y_pred.shape or y_true.ndim != 1:
        raise InputError("y_true and y_pred must be equal-length vectors")
    if y_true.size == 0:
        raise InputError("empty label vectors")
    if average not in ("macro", "micro"):
        raise InputError(f"unknown averaging mode {average!r}")

    accuracy = float((y_true == y_pred).mean())
    per_class: dict[int, ClassMetrics] = {}
    for c in (0, 1):
        tp = int(((y_pred == c) & (y_true == c)).sum())
        fp = int(((y_pred == c) & (y_true != c)).sum())
        fn = int(((y_pred != c) & (y_true == c)).sum())
        precision = _safe_div(tp, tp + fp)
        recall = _safe_div(tp, tp + fn)
        f1 = _safe_div(2.0 * precision * recall, precision + recall)
        per_class[c] = ClassMetrics(precision, recall, f1, int((y_true == c).sum()))

    if average == "macro":
        precision = (per_class[0].precision + per_class[1].precision) / 2.0
        recall = (per_class[0].recall + per_class[1].recall) / 2.0
        f1 = (per_class[0].f1 + per_class[1].f1) / 2.0
    else:  # micro: pooled counts; single-label binary pooling equals accuracy
        precision = recall = f1 = accuracy
    return Metrics(accuracy, precision, recall, f1, per_class, average)


def mean_metrics(folds: list[Metrics]) -> Metrics:
    if not folds:
        raise InputError("no fold metrics to average")
    per_class = {}
    for c in (0, 1):
        per_class[c] = ClassMetrics(
            precision=float(np.mean([m.per_class[c].precision for m in folds])),
            recall=float(np.mean([m.per_class[c].recall for m in folds])),
            f1=float(np.mean([m.per_class[c].f1 for m in folds])),
            support=int(sum(m.per_class[c].support for m in folds)),
        )
    return Metrics(
        accuracy=float(np.mean([m.accuracy for m in folds])),
        precision=float(np.mean([m.precision for m in folds])),
        recall=float(np.mean([m.recall for m in folds])),
        f1=float(np.mean([m.f1 for m in folds])),
        per_class=per_class,
        average=folds[0].average,
    )
