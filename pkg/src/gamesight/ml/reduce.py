"""Dimensionality reduction: binary Fisher discriminant and PCA.

Both reducers carry deterministic sign conventions so repeated runs emit
byte-identical projections.  The reduction interface (fit/transform over a
matrix) is pluggable; third-party reducers can slot into the grids.
"""
from __future__ import annotations

import numpy as np

from ..errors import DegenerateLabelsError, InputError

LDA_RIDGE_FACTOR = 1e-3  # ridge = factor * trace(Sw)/dim, applied on singular scatter


def pooled_within_scatter(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    Sw = np.zeros((X.shape[1], X.shape[1]))
    for c in (0, 1):
        Xc = X[y == c]
        centered = Xc - Xc.mean(axis=0)
        Sw += centered.T @ centered
    return Sw


def fisher_direction(X, y, ridge: float | None = None) -> np.ndarray:
    """Unit vector proportional to Sw^-1 (mu1 - mu0); ridge-regularized if singular."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if set(np.unique(y)) != {0, 1}:
        raise DegenerateLabelsError("fisher direction needs both classes")
    Sw = pooled_within_scatter(X, y)
    diff = X[y == 1].mean(axis=0) - X[y == 0].mean(axis=0)
    if ridge is not None:
        Sw = Sw + ridge * np.eye(Sw.shape[0])
        direction = np.linalg.solve(Sw, diff)
    else:
        try:
            cond = np.linalg.cond(Sw)
        except np.linalg.LinAlgError:  # pragma: no cover - cond rarely fails
            cond = np.inf
        if not np.isfinite(cond) or cond > 1e12:
            lam = LDA_RIDGE_FACTOR * float(np.trace(Sw)) / Sw.shape[0]
            lam = lam if lam > 0 else LDA_RIDGE_FACTOR
            Sw = Sw + lam * np.eye(Sw.shape[0])
        direction = np.linalg.solve(Sw, diff)
    norm = float(np.linalg.norm(direction))
    if norm == 0.0:
        raise InputError("degenerate scatter: zero Fisher direction")
    direction = direction / norm
    if float(direction @ diff) < 0:  # suitable mean projects higher
        direction = -direction
    return direction


class LDAReducer:
    """Projects rows onto the binary Fisher discriminant (1-D scores)."""

    def __init__(self):
        self.direction_: np.ndarray | None = None

    @property
    def n_components(self) -> int:
        return 1

    def fit(self, X, y) -> "LDAReducer":
        self.direction_ = fisher_direction(X, y)
        return self

    def transform(self, X) -> np.ndarray:
        if self.direction_ is None:
            raise InputError("reducer is not fitted")
        return np.asarray(X, dtype=float) @ self.direction_[:, None]


class PCAReducer:
    """Top-d eigenvectors of the sample covariance by symmetric eigendecomposition."""

    def __init__(self, n_components: int):
        if n_components < 1:
            raise InputError("n_components must be >= 1")
        self.n_components = int(n_components)
        self.mean_: np.ndarray | None = None
        self.components_: np.ndarray | None = None       # (d, p) rows = components
        self.explained_variance_: np.ndarray | None = None

    def fit(self, X, y=None) -> "PCAReducer":
        X = np.asarray(X, dtype=float)
        n, p = X.shape
        if self.n_components > p:
            raise InputError(f"n_components {self.n_components} > n_features {p}")
        self.mean_ = X.mean(axis=0)
        centered = X - self.mean_
        cov = centered.T @ centered / max(n - 1, 1)
        eigenvalues, eigenvectors = np.linalg.eigh(cov)
        order = np.argsort(eigenvalues)[::-1][:self.n_components]
        components = eigenvectors[:, order].T
        # sign convention: the largest-magnitude entry of each component is positive
        for i in range(components.shape[0]):
            j = int(np.argmax(np.abs(components[i])))
            if components[i, j] < 0:
                components[i] = -components[i]
        self.components_ = components
        self.explained_variance_ = np.maximum(eigenvalues[order], 0.0)
        return self

    def transform(self, X) -> np.ndarray:
        if self.components_ is None:
            raise InputError("reducer is not fitted")
        return (np.asarray(X, dtype=float) - self.mean_) @ self.components_.T


def reduce_lda(X, y) -> tuple[np.ndarray, LDAReducer]:
    reducer = LDAReducer().fit(X, y)
    return reducer.direction_, reducer


def reduce_pca(X, d: int) -> tuple[np.ndarray, PCAReducer]:
    reducer = PCAReducer(d).fit(X)
    return reducer.components_, reducer
