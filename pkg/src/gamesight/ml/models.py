"""Self-contained binary classifiers trained with seeded, deterministic routines.

Five kinds, matching the evaluation grids: l2-regularized logistic regression
and linear SVM trained by batch (sub)gradient descent, a random forest of
Gini-split CART trees with sqrt feature subsampling, gradient-boosted
depth-1 stumps on logistic loss, and a fully connected MLP (tanh hidden
layers, logistic output) trained by seeded mini-batch gradient descent.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DegenerateLabelsError, InputError

MODEL_KINDS = ("logistic_regression", "linear_svm", "random_forest", "gbm_stumps", "mlp")


@dataclass(frozen=True)
class ModelSpec:
    kind: str
    hyperparameters: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise InputError(f"unknown model kind {self.kind!r}")
        hp = self.hyperparameters
        if self.kind == "mlp":
            layers = hp.get("hidden_layers", [64])
            if not layers or any(int(h) <= 0 for h in layers):
                raise InputError("mlp hidden layer sizes must be positive")
        if self.kind == "random_forest" and int(hp.get("n_trees", 1)) <= 0:
            raise InputError("random_forest needs n_trees >= 1")
        if self.kind == "gbm_stumps" and int(hp.get("rounds", 1)) <= 0:
            raise InputError("gbm_stumps needs rounds >= 1")

    def with_seed(self, seed: int) -> "ModelSpec":
        return ModelSpec(self.kind, dict(self.hyperparameters), int(seed))


def _check_xy(X: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise InputError("X must be (n, d) and y (n,)")
    if np.isnan(X).any():
        raise InputError("X contains missing values")
    classes = np.unique(y)
    if not np.array_equal(classes, np.array([0, 1])):
        if classes.size < 2:
            raise DegenerateLabelsError(f"single-class labels: {classes.tolist()}")
        raise InputError(f"labels must be binary 0/1, got {classes.tolist()}")
    return X, y


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


# ---------------------------------------------------------------------------
# linear models
# ---------------------------------------------------------------------------

class LogisticRegression:
    def __init__(self, learning_rate=0.5, epochs=300, l2=1e-3, seed=0):
        self.learning_rate = float(learning_rate)
        self.epochs = int(epochs)
        self.l2 = float(l2)
        self.w: np.ndarray | None = None
        self.b = 0.0

    def fit(self, X, y):
        X, y = _check_xy(X, y)
        n, d = X.shape
        self.w = np.zeros(d)
        self.b = 0.0
        for _ in range(self.epochs):
            p = _sigmoid(X @ self.w + self.b)
            err = p - y
            grad_w = X.T @ err / n + self.l2 * self.w
            grad_b = float(err.mean())
            self.w -= self.learning_rate * grad_w
            self.b -= self.learning_rate * grad_b
        return self

    def predict_score(self, X):
        return _sigmoid(np.asarray(X, dtype=float) @ self.w + self.b)

    def predict(self, X):
        return (self.predict_score(X) >= 0.5).astype(int)

    @property
    def feature_importances_(self):
        return np.abs(self.w)


class LinearSVM:
    def __init__(self, learning_rate=0.1, epochs=300, l2=1e-2, seed=0):
        self.learning_rate = float(learning_rate)
        self.epochs = int(epochs)
        self.l2 = float(l2)
        self.w: np.ndarray | None = None
        self.b = 0.0

    def fit(self, X, y):
        X, y = _check_xy(X, y)
        n, d = X.shape
        t = 2.0 * y - 1.0  # {-1, +1}
        self.w = np.zeros(d)
        self.b = 0.0
        for _ in range(self.epochs):
            margins = t * (X @ self.w + self.b)
            active = margins < 1.0
            grad_w = self.l2 * self.w - (X[active].T @ t[active]) / n
            grad_b = -float(t[active].sum()) / n
            self.w -= self.learning_rate * grad_w
            self.b -= self.learning_rate * grad_b
        return self

    def predict_score(self, X):
        return np.asarray(X, dtype=float) @ self.w + self.b

    def predict(self, X):
        return (self.predict_score(X) >= 0.0).astype(int)

    @property
    def feature_importances_(self):
        return np.abs(self.w)


# ---------------------------------------------------------------------------
# CART / random forest
# ---------------------------------------------------------------------------

def _gini_best_split(X, y, feature_ids):
    """Best (feature, threshold, cost, gain) by Gini over candidate midpoints."""
    n = y.size
    total1 = int(y.sum())
    parent = 1.0 - (total1 / n) ** 2 - ((n - total1) / n) ** 2
    best_cost, best_feature, best_threshold = np.inf, None, None
    for j in feature_ids:
        order = np.argsort(X[:, j], kind="stable")
        xs = X[order, j]
        ys = y[order]
        cut = np.nonzero(xs[:-1] < xs[1:])[0]
        if cut.size == 0:
            continue
        cum1 = np.cumsum(ys)
        nl = cut + 1.0
        nr = n - nl
        l1 = cum1[cut]
        r1 = total1 - l1
        gini_l = 1.0 - (l1 / nl) ** 2 - ((nl - l1) / nl) ** 2
        gini_r = 1.0 - (r1 / nr) ** 2 - ((nr - r1) / nr) ** 2
        cost = (nl * gini_l + nr * gini_r) / n
        i = int(np.argmin(cost))
        if cost[i] < best_cost - 1e-15:
            best_cost = float(cost[i])
            best_feature = int(j)
            best_threshold = float((xs[cut[i]] + xs[cut[i] + 1]) / 2.0)
    gain = parent - best_cost if best_feature is not None else 0.0
    return best_feature, best_threshold, gain


class _TreeNode:
    __slots__ = ("feature", "threshold", "left", "right", "prob")

    def __init__(self):
        self.feature = None
        self.threshold = None
        self.left = None
        self.right = None
        self.prob = 0.0


class DecisionTree:
    """CART with Gini splits; optional per-node feature subsampling."""

    def __init__(self, max_depth=None, max_features=None, rng=None):
        self.max_depth = max_depth
        self.max_features = max_features
        self.rng = rng or np.random.default_rng(0)
        self.root: _TreeNode | None = None
        self.importances: np.ndarray | None = None

    def fit(self, X, y):
        n, d = X.shape
        self.importances = np.zeros(d)
        self._n_total = n
        self.root = self._build(X, y, depth=0)
        return self

    def _build(self, X, y, depth):
        node = _TreeNode()
        node.prob = float(y.mean())
        if (y == y[0]).all():
            return node
        if self.max_depth is not None and depth >= self.max_depth:
            return node
        d = X.shape[1]
        if self.max_features is None or self.max_features >= d:
            feature_ids = np.arange(d)
        else:
            feature_ids = np.sort(self.rng.choice(d, size=self.max_features, replace=False))
        feature, threshold, gain = _gini_best_split(X, y, feature_ids)
        if feature is None or gain <= 0.0:
            return node
        mask = X[:, feature] < threshold
        if not mask.any() or mask.all():
            return node
        node.feature = feature
        node.threshold = threshold
        self.importances[feature] += gain * (y.size / self._n_total)
        node.left = self._build(X[mask], y[mask], depth + 1)
        node.right = self._build(X[~mask], y[~mask], depth + 1)
        return node

    def predict_proba(self, X):
        X = np.asarray(X, dtype=float)
        out = np.empty(X.shape[0])
        for i, row in enumerate(X):
            node = self.root
            while node.feature is not None:
                node = node.left if row[node.feature] < node.threshold else node.right
            out[i] = node.prob
        return out


class RandomForest:
    def __init__(self, n_trees=60, max_depth=None, bootstrap=True, max_features="sqrt",
                 seed=0):
        self.n_trees = int(n_trees)
        self.max_depth = max_depth
        self.bootstrap = bool(bootstrap)
        self.max_features = max_features
        self.seed = int(seed)
        self.trees: list[DecisionTree] = []

    def _n_features_per_split(self, d: int) -> int | None:
        if self.max_features is None:
            return None
        if self.max_features == "sqrt":
            return max(1, int(np.sqrt(d)))
        return min(d, int(self.max_features))

    def fit(self, X, y):
        X, y = _check_xy(X, y)
        n, d = X.shape
        k = self._n_features_per_split(d)
        self.trees = []
        self._importances = np.zeros(d)
        seeds = np.random.SeedSequence([self.seed]).spawn(self.n_trees)
        for ss in seeds:
            rng = np.random.default_rng(ss)
            if self.bootstrap:
                idx = rng.integers(0, n, size=n)
            else:
                idx = np.arange(n)
            Xb, yb = X[idx], y[idx]
            if (yb == yb[0]).all():  # resample once on degenerate bootstraps
                idx = rng.integers(0, n, size=n)
                Xb, yb = X[idx], y[idx]
            tree = DecisionTree(max_depth=self.max_depth, max_features=k, rng=rng)
            tree.fit(Xb, yb)
            self.trees.append(tree)
            self._importances += tree.importances
        total = self._importances.sum()
        self._importances = self._importances / total if total > 0 else self._importances
        return self

    def predict_score(self, X):
        votes = np.zeros(np.asarray(X).shape[0])
        for tree in self.trees:
            votes += (tree.predict_proba(X) >= 0.5).astype(float)
        return votes / len(self.trees)

    def predict(self, X):
        return (self.predict_score(X) >= 0.5).astype(int)

    @property
    def feature_importances_(self):
        return self._importances


# ---------------------------------------------------------------------------
# gradient-boosted stumps
# ---------------------------------------------------------------------------

def _sse_best_split(X, r):
    """Regression stump split minimizing the residual SSE."""
    n = r.size
    best_gain, best_feature, best_threshold = 0.0, None, None
    total = r.sum()
    base = (r * r).sum() - total * total / n
    for j in range(X.shape[1]):
        order = np.argsort(X[:, j], kind="stable")
        xs = X[order, j]
        rs = r[order]
        cut = np.nonzero(xs[:-1] < xs[1:])[0]
        if cut.size == 0:
            continue
        cum = np.cumsum(rs)
        nl = cut + 1.0
        nr = n - nl
        sl = cum[cut]
        sr = total - sl
        sse_red = sl * sl / nl + sr * sr / nr - total * total / n
        i = int(np.argmax(sse_red))
        if sse_red[i] > best_gain + 1e-15:
            best_gain = float(sse_red[i])
            best_feature = int(j)
            best_threshold = float((xs[cut[i]] + xs[cut[i] + 1]) / 2.0)
    return best_feature, best_threshold, best_gain, base


class GBMStumps:
    """Boosted depth-1 trees on logistic loss with Newton leaf values."""

    def __init__(self, rounds=150, learning_rate=0.1, seed=0):
        self.rounds = int(rounds)
        self.learning_rate = float(learning_rate)
        self.stumps: list[tuple[int, float, float, float]] = []
        self.f0 = 0.0

    def fit(self, X, y):
        X, y = _check_xy(X, y)
        n, d = X.shape
        p = float(y.mean())
        self.f0 = float(np.log(p / (1.0 - p)))
        F = np.full(n, self.f0)
        self._importances = np.zeros(d)
        self.stumps = []
        for _ in range(self.rounds):
            prob = _sigmoid(F)
            residual = y - prob
            feature, threshold, gain, _ = _sse_best_split(X, residual)
            if feature is None:
                break
            mask = X[:, feature] < threshold
            hess = prob * (1.0 - prob)
            left = float(residual[mask].sum() / max(hess[mask].sum(), 1e-12))
            right = float(residual[~mask].sum() / max(hess[~mask].sum(), 1e-12))
            self.stumps.append((feature, threshold, left, right))
            self._importances[feature] += gain
            F = F + self.learning_rate * np.where(mask, left, right)
        total = self._importances.sum()
        self._importances = self._importances / total if total > 0 else self._importances
        return self

    def _raw(self, X):
        X = np.asarray(X, dtype=float)
        F = np.full(X.shape[0], self.f0)
        for feature, threshold, left, right in self.stumps:
            F = F + self.learning_rate * np.where(X[:, feature] < threshold, left, right)
        return F

    def predict_score(self, X):
        return _sigmoid(self._raw(X))

    def predict(self, X):
        return (self.predict_score(X) >= 0.5).astype(int)

    @property
    def feature_importances_(self):
        return self._importances


# ---------------------------------------------------------------------------
# MLP
# ---------------------------------------------------------------------------

class MLP:
    """Fully connected tanh net with a logistic output unit.

    Trained on binary cross-entropy by seeded mini-batch gradient descent
    with a fixed epoch budget (no early stopping, keeps runs deterministic).
    """

    def __init__(self, hidden_layers=(64,), learning_rate=0.01, epochs=500,
                 batch_size=16, l2=0.0, seed=0):
        self.hidden_layers = tuple(int(h) for h in hidden_layers)
        self.learning_rate = float(learning_rate)
        self.epochs = int(epochs)
        self.batch_size = int(batch_size)
        self.l2 = float(l2)
        self.seed = int(seed)
        self.weights: list[np.ndarray] = []
        self.biases: list[np.ndarray] = []
        self.loss_curve_: list[float] = []

    def _init_params(self, d: int) -> None:
        rng = np.random.default_rng(np.random.SeedSequence([self.seed]))
        sizes = [d, *self.hidden_layers, 1]
        self.weights = []
        self.biases = []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            scale = np.sqrt(1.0 / fan_in)
            self.weights.append(rng.normal(0.0, scale, size=(fan_in, fan_out)))
            self.biases.append(np.zeros(fan_out))
        self._shuffle_rng = np.random.default_rng(np.random.SeedSequence([self.seed, 1]))

    def _forward(self, X):
        """Returns activations per layer; last entry is the output probability."""
        acts = [np.asarray(X, dtype=float)]
        for i, (W, b) in enumerate(zip(self.weights, self.biases)):
            z = acts[-1] @ W + b
            acts.append(_sigmoid(z) if i == len(self.weights) - 1 else np.tanh(z))
        return acts

    def loss(self, X, y) -> float:
        p = np.clip(self._forward(X)[-1][:, 0], 1e-12, 1.0 - 1e-12)
        y = np.asarray(y, dtype=float)
        data = -float(np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))
        reg = 0.5 * self.l2 * sum(float((W * W).sum()) for W in self.weights)
        return data + reg

    def gradients(self, X, y):
        """Analytic gradients of `loss` wrt weights and biases."""
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        n = X.shape[0]
        acts = self._forward(X)
        grads_w = [np.zeros_like(W) for W in self.weights]
        grads_b = [np.zeros_like(b) for b in self.biases]
        delta = (acts[-1] - y[:, None]) / n  # sigmoid + BCE
        for i in range(len(self.weights) - 1, -1, -1):
            grads_w[i] = acts[i].T @ delta + self.l2 * self.weights[i]
            grads_b[i] = delta.sum(axis=0)
            if i > 0:
                delta = (delta @ self.weights[i].T) * (1.0 - acts[i] ** 2)
        return grads_w, grads_b

    def fit(self, X, y):
        X, y = _check_xy(X, y)
        n, d = X.shape
        self._init_params(d)
        self.loss_curve_ = []
        for _ in range(self.epochs):
            order = self._shuffle_rng.permutation(n)
            for start in range(0, n, self.batch_size):
                batch = order[start:start + self.batch_size]
                gw, gb = self.gradients(X[batch], y[batch])
                for i in range(len(self.weights)):
                    self.weights[i] -= self.learning_rate * gw[i]
                    self.biases[i] -= self.learning_rate * gb[i]
            self.loss_curve_.append(self.loss(X, y))
        return self

    def predict_score(self, X):
        return self._forward(X)[-1][:, 0]

    def predict(self, X):
        return (self.predict_score(X) >= 0.5).astype(int)


# ---------------------------------------------------------------------------
# factory
# ---------------------------------------------------------------------------

def build_model(spec: ModelSpec):
    hp = dict(spec.hyperparameters)
    if spec.kind == "logistic_regression":
        return LogisticRegression(learning_rate=hp.get("learning_rate", 0.5),
                                  epochs=hp.get("epochs", 300), l2=hp.get("l2", 1e-3))
    if spec.kind == "linear_svm":
        return LinearSVM(learning_rate=hp.get("learning_rate", 0.1),
                         epochs=hp.get("epochs", 300), l2=hp.get("l2", 1e-2))
    if spec.kind == "random_forest":
        return RandomForest(n_trees=hp.get("n_trees", 60),
                            max_depth=hp.get("max_depth"),
                            bootstrap=hp.get("bootstrap", True),
                            max_features=hp.get("max_features", "sqrt"),
                            seed=spec.seed)
    if spec.kind == "gbm_stumps":
        return GBMStumps(rounds=hp.get("rounds", 150),
                         learning_rate=hp.get("learning_rate", 0.1))
    if spec.kind == "mlp":
        return MLP(hidden_layers=hp.get("hidden_layers", [64]),
                   learning_rate=hp.get("learning_rate", 0.01),
                   epochs=hp.get("epochs", 500),
                   batch_size=hp.get("batch_size", 16),
                   l2=hp.get("l2", 0.0),
                   seed=spec.seed)
    raise InputError(f"unknown model kind {spec.kind!r}")  # pragma: no cover


def train(spec: ModelSpec, X, y):
    return build_model(spec).fit(X, y)


def predict(model, X) -> np.ndarray:
    return model.predict(X)


def predict_score(model, X) -> np.ndarray:
    return model.predict_score(X)
