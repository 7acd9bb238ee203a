"""Preprocessing stack: coverage, variance, correlation pruning, scaling.

All operations are pure (they return a new dataset) and record what they
removed.  Correlation pruning is a greedy pass in catalog order: when a pair
exceeds the threshold, the later-listed feature is dropped, catalog order
standing in for interpretability.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InputError, UndefinedCorrelationError
from .dataset import Dataset


def pearson(x, y) -> float:
    """Sample Pearson correlation; raises on constant input."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise InputError("pearson needs two equal-length vectors")
    if x.size < 2:
        raise InputError("pearson needs at least two observations")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = float(np.sqrt((xc * xc).sum()))
    sy = float(np.sqrt((yc * yc).sum()))
    if sx == 0.0 or sy == 0.0:
        raise UndefinedCorrelationError("correlation undefined for constant input")
    return float((xc * yc).sum() / (sx * sy))


@dataclass(frozen=True)
class Removal:
    feature: str
    reason: str


def _numeric_view(ds: Dataset, name: str) -> np.ndarray | None:
    """Feature as float vector with NaN for missing; None for enums/strings."""
    var = ds.variable(name)
    if var.dtype in ("number", "bool"):
        return np.array([np.nan if v is None else float(v) for v in ds.column(name)],
                        dtype=float)
    return None


def _in_scope(ds: Dataset, name: str, roles: set[str] | None) -> bool:
    return roles is None or ds.variable(name).role in roles


def drop_low_coverage(ds: Dataset, min_fraction: float = 0.7,
                      roles: set[str] | None = None) -> tuple[Dataset, list[Removal]]:
    if not 0.0 < min_fraction <= 1.0:
        raise InputError("min_fraction must be in (0, 1]")
    keep, removed = [], []
    for name in ds.feature_names:
        if not _in_scope(ds, name, roles):
            keep.append(name)
            continue
        values = ds.column(name)
        coverage = sum(v is not None for v in values) / max(1, len(values))
        if coverage >= min_fraction:
            keep.append(name)
        else:
            removed.append(Removal(name, f"coverage {coverage:.3f} < {min_fraction}"))
    return ds.with_features(keep), removed


def drop_near_zero_variance(ds: Dataset, eps: float = 1e-8,
                            roles: set[str] | None = None) -> tuple[Dataset, list[Removal]]:
    if eps < 0:
        raise InputError("eps must be non-negative")
    keep, removed = [], []
    for name in ds.feature_names:
        var = ds.variable(name)
        if not _in_scope(ds, name, roles):
            keep.append(name)
            continue
        if var.dtype == "string":
            keep.append(name)
            continue
        values = [v for v in ds.column(name) if v is not None]
        if not values:
            removed.append(Removal(name, "no observed values"))
            continue
        if var.dtype == "enum":
            if len(set(values)) <= 1:
                removed.append(Removal(name, "single observed value"))
            else:
                keep.append(name)
            continue
        arr = np.asarray(values, dtype=float)
        variance = float(arr.var(ddof=1)) if arr.size > 1 else 0.0
        if variance <= eps:
            removed.append(Removal(name, f"variance {variance:.3g} <= {eps}"))
        else:
            keep.append(name)
    return ds.with_features(keep), removed


def prune_correlated(ds: Dataset, threshold: float = 0.95,
                     roles: set[str] | None = None) -> tuple[Dataset, list[Removal]]:
    """Greedy catalog-order pruning of |r| > threshold pairs (numeric/bool only)."""
    if not 0.0 < threshold < 1.0:
        raise InputError("threshold must be in (0, 1)")
    numeric = [n for n in ds.feature_names
               if _in_scope(ds, n, roles) and _numeric_view(ds, n) is not None]
    views = {n: _numeric_view(ds, n) for n in numeric}
    alive = dict.fromkeys(numeric, True)
    removed = []
    for i, a in enumerate(numeric):
        if not alive[a]:
            continue
        for b in numeric[i + 1:]:
            if not alive[b]:
                continue
            xa, xb = views[a], views[b]
            mask = ~(np.isnan(xa) | np.isnan(xb))
            if mask.sum() < 2:
                continue
            try:
                r = pearson(xa[mask], xb[mask])
            except UndefinedCorrelationError:
                continue
            if abs(r) > threshold:
                alive[b] = False
                removed.append(Removal(b, f"|r|={abs(r):.3f} with {a!r}"))
    keep = [n for n in ds.feature_names if alive.get(n, True)]
    return ds.with_features(keep), removed


class MinMaxScaler:
    """Per-column min-max to [0, 1]; constant columns map to 0.5."""

    def __init__(self):
        self.mins: np.ndarray | None = None
        self.maxs: np.ndarray | None = None

    def fit(self, X: np.ndarray) -> "MinMaxScaler":
        X = np.asarray(X, dtype=float)
        self.mins = np.nanmin(X, axis=0) if X.size else np.zeros(X.shape[1])
        self.maxs = np.nanmax(X, axis=0) if X.size else np.zeros(X.shape[1])
        return self

    def transform(self, X: np.ndarray) -> np.ndarray:
        if self.mins is None:
            raise InputError("scaler is not fitted")
        X = np.asarray(X, dtype=float)
        span = self.maxs - self.mins
        out = np.empty_like(X)
        for j in range(X.shape[1]):
            if span[j] == 0:
                out[:, j] = np.where(np.isnan(X[:, j]), np.nan, 0.5)
            else:
                out[:, j] = (X[:, j] - self.mins[j]) / span[j]
        return out

    def inverse(self, X: np.ndarray) -> np.ndarray:
        if self.mins is None:
            raise InputError("scaler is not fitted")
        X = np.asarray(X, dtype=float)
        span = self.maxs - self.mins
        out = np.empty_like(X)
        for j in range(X.shape[1]):
            if span[j] == 0:
                out[:, j] = self.mins[j]
            else:
                out[:, j] = X[:, j] * span[j] + self.mins[j]
        return out


class DatasetScaler:
    """Min-max over the numeric/bool features of a Dataset; reapplies to new rows."""

    def __init__(self):
        self.params: dict[str, tuple[float, float]] = {}

    def fit(self, ds: Dataset) -> "DatasetScaler":
        for name in ds.feature_names:
            view = _numeric_view(ds, name)
            if view is None or np.all(np.isnan(view)):
                continue
            self.params[name] = (float(np.nanmin(view)), float(np.nanmax(view)))
        return self

    def transform(self, ds: Dataset) -> Dataset:
        if not self.params:
            raise InputError("scaler is not fitted")
        rows = []
        for row in ds.rows:
            out = dict(row)
            for name, (lo, hi) in self.params.items():
                if name not in out or out[name] is None:
                    continue
                out[name] = 0.5 if hi == lo else (float(out[name]) - lo) / (hi - lo)
            rows.append(out)
        return Dataset(list(ds.feature_names), rows, list(ds.labels), list(ds.label_sources))

    def transform_value(self, name: str, value: float) -> float:
        lo, hi = self.params[name]
        return 0.5 if hi == lo else (value - lo) / (hi - lo)


def normalize(ds: Dataset, method: str = "min_max") -> tuple[Dataset, DatasetScaler]:
    if method != "min_max":
        raise InputError(f"unknown normalization method {method!r}")
    scaler = DatasetScaler().fit(ds)
    return scaler.transform(ds), scaler


def label_correlations(ds: Dataset, threshold: float = 0.25) -> list[tuple[str, float]]:
    """Feature-vs-label Pearson, filtered at |r| > threshold, sorted by |r| desc."""
    y = np.array([np.nan if v is None else float(v) for v in ds.labels], dtype=float)
    mask_label = ~np.isnan(y)
    out = []
    for name in ds.feature_names:
        view = _numeric_view(ds, name)
        if view is None:
            continue
        mask = mask_label & ~np.isnan(view)
        if mask.sum() < 2:
            continue
        try:
            r = pearson(view[mask], y[mask])
        except UndefinedCorrelationError:
            continue
        if abs(r) > threshold:
            out.append((name, r))
    out.sort(key=lambda item: (-abs(item[1]), item[0]))
    return out
