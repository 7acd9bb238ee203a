import numpy as np
import pytest

from gamesight.errors import DegenerateLabelsError, InputError
from gamesight.ml import MLP, ModelSpec, build_model, predict, predict_score, train


def blobs(n=40, d=2, gap=4.0, seed=0):
    rng = np.random.default_rng(seed)
    X0 = rng.normal(-gap / 2, 0.5, size=(n, d))
    X1 = rng.normal(+gap / 2, 0.5, size=(n, d))
    X = np.vstack([X0, X1])
    y = np.array([0] * n + [1] * n)
    perm = rng.permutation(2 * n)
    return X[perm], y[perm]


ALL_KINDS = [
    ModelSpec("logistic_regression", {}),
    ModelSpec("linear_svm", {}),
    ModelSpec("random_forest", {"n_trees": 30}),
    ModelSpec("gbm_stumps", {"rounds": 60}),
    ModelSpec("mlp", {"hidden_layers": [8], "epochs": 150}),
]


@pytest.mark.parametrize("spec", ALL_KINDS, ids=lambda s: s.kind)
def test_every_kind_separates_blobs(spec):
    X, y = blobs()
    model = train(spec.with_seed(3), X, y)
    assert (predict(model, X) == y).mean() == 1.0
    scores = predict_score(model, X)
    assert scores.shape == (X.shape[0],)
    assert scores[y == 1].mean() > scores[y == 0].mean()


def test_rf_memorizes_with_bootstrap_off_single_tree():
    rng = np.random.default_rng(4)
    X = rng.normal(size=(40, 3))
    y = (rng.random(40) < 0.5).astype(int)
    y[:2] = [0, 1]
    spec = ModelSpec("random_forest",
                     {"n_trees": 1, "bootstrap": False, "max_features": None,
                      "max_depth": None})
    model = train(spec, X, y)
    assert (predict(model, X) == y).mean() == 1.0


def test_single_class_labels_raise():
    X = np.zeros((6, 2))
    with pytest.raises(DegenerateLabelsError):
        train(ModelSpec("logistic_regression", {}), X, np.ones(6, dtype=int))


def test_missing_values_rejected():
    X = np.array([[1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(InputError):
        train(ModelSpec("logistic_regression", {}), X, np.array([0, 1]))


def test_models_deterministic_given_seed():
    X, y = blobs(gap=1.0, seed=9)
    for spec in ALL_KINDS:
        a = predict_score(train(spec.with_seed(11), X, y), X)
        b = predict_score(train(spec.with_seed(11), X, y), X)
        assert np.array_equal(a, b), spec.kind


def test_mlp_loss_decreases_over_first_epochs():
    X, y = blobs(gap=3.0, seed=2)
    mlp = MLP(hidden_layers=[6], epochs=10, learning_rate=0.05, seed=1).fit(X, y)
    losses = mlp.loss_curve_
    assert len(losses) == 10
    # monotone after smoothing: the 3-epoch trailing mean strictly improves
    smooth = [np.mean(losses[i:i + 3]) for i in range(len(losses) - 2)]
    assert smooth[-1] < smooth[0]
    assert losses[-1] < losses[0]


def test_mlp_hidden_layer_validation():
    with pytest.raises(InputError):
        ModelSpec("mlp", {"hidden_layers": []})
    with pytest.raises(InputError):
        ModelSpec("mlp", {"hidden_layers": [0]})
    spec = ModelSpec("mlp", {"hidden_layers": [22, 63]})
    model = build_model(spec)
    assert model.hidden_layers == (22, 63)


def gradient_check(mlp, X, y, epsilon=1e-5):
    """Max relative error between analytic and central-difference gradients."""
    mlp._init_params(X.shape[1])
    grads_w, grads_b = mlp.gradients(X, y)
    worst = 0.0
    for params, grads in ((mlp.weights, grads_w), (mlp.biases, grads_b)):
        for layer, grad in zip(params, grads):
            it = np.nditer(layer, flags=["multi_index"])
            while not it.finished:
                idx = it.multi_index
                original = layer[idx]
                layer[idx] = original + epsilon
                plus = mlp.loss(X, y)
                layer[idx] = original - epsilon
                minus = mlp.loss(X, y)
                layer[idx] = original
                numeric = (plus - minus) / (2 * epsilon)
                analytic = grad[idx]
                denom = max(abs(numeric), abs(analytic), 1e-8)
                worst = max(worst, abs(numeric - analytic) / denom)
                it.iternext()
    return worst


def test_mlp_gradients_match_finite_differences_on_random_nets():
    rng = np.random.default_rng(123)
    for trial in range(20):
        n = int(rng.integers(3, 8))
        d = int(rng.integers(2, 5))
        hidden = [int(rng.integers(2, 6)) for _ in range(int(rng.integers(1, 3)))]
        X = rng.normal(size=(n, d))
        y = rng.integers(0, 2, size=n)
        mlp = MLP(hidden_layers=hidden, l2=float(rng.choice([0.0, 1e-3])),
                  seed=int(rng.integers(0, 1000)))
        assert gradient_check(mlp, X, y) < 1e-4
