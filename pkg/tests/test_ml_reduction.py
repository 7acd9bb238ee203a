import math
from fractions import Fraction

import numpy as np
import pytest

from gamesight.errors import InputError
from gamesight.ml import LDAReducer, PCAReducer, fisher_direction, reduce_lda, reduce_pca


def angle_between(u, v) -> float:
    cos = abs(float(u @ v) / (np.linalg.norm(u) * np.linalg.norm(v)))
    return math.acos(min(1.0, cos))


def test_lda_direction_matches_exact_closed_form_on_fixed_8_points():
    # class 0 and class 1, four points each; oracle computed in exact rationals
    X0 = [(0, 0), (2, 1), (1, 2), (1, -1)]
    X1 = [(4, 1), (6, 2), (5, 3), (5, -2)]
    X = np.array(X0 + X1, dtype=float)
    y = np.array([0] * 4 + [1] * 4)

    def exact_direction():
        mean0 = [Fraction(sum(p[i] for p in X0), 4) for i in range(2)]
        mean1 = [Fraction(sum(p[i] for p in X1), 4) for i in range(2)]
        sw = [[Fraction(0), Fraction(0)], [Fraction(0), Fraction(0)]]
        for points, mean in ((X0, mean0), (X1, mean1)):
            for p in points:
                d = [Fraction(p[0]) - mean[0], Fraction(p[1]) - mean[1]]
                for i in range(2):
                    for j in range(2):
                        sw[i][j] += d[i] * d[j]
        det = sw[0][0] * sw[1][1] - sw[0][1] * sw[1][0]
        inv = [[sw[1][1] / det, -sw[0][1] / det], [-sw[1][0] / det, sw[0][0] / det]]
        diff = [mean1[0] - mean0[0], mean1[1] - mean0[1]]
        return np.array([float(inv[0][0] * diff[0] + inv[0][1] * diff[1]),
                         float(inv[1][0] * diff[0] + inv[1][1] * diff[1])])

    learned = fisher_direction(X, y)
    assert angle_between(learned, exact_direction()) < 1e-10


def test_symmetric_clusters_give_axis_aligned_direction():
    # exact symmetric offsets make the scatter isotropic, so the direction is
    # the separation axis itself
    offsets = np.array([(1, 0), (-1, 0), (0, 1), (0, -1)], dtype=float)
    X = np.vstack([offsets + (-3, 0), offsets + (3, 0)])
    y = np.array([0] * 4 + [1] * 4)
    direction = fisher_direction(X, y)
    assert angle_between(direction, np.array([1.0, 0.0])) < 1e-6


def test_projected_class_means_differ_in_sign_after_centering():
    rng = np.random.default_rng(3)
    X = np.vstack([rng.normal(-1, 0.4, size=(30, 3)), rng.normal(1, 0.4, size=(30, 3))])
    y = np.array([0] * 30 + [1] * 30)
    _, reducer = reduce_lda(X, y)
    scores = reducer.transform(X)[:, 0]
    centered = scores - scores.mean()
    assert centered[y == 1].mean() > 0 > centered[y == 0].mean()


def test_lda_invariant_under_invertible_affine_rescaling():
    rng = np.random.default_rng(6)
    X = np.vstack([rng.normal(0, 1, size=(40, 4)), rng.normal(2, 1, size=(40, 4))])
    y = np.array([0] * 40 + [1] * 40)
    A = rng.normal(size=(4, 4)) + 4 * np.eye(4)
    b = rng.normal(size=4)
    d_original = fisher_direction(X, y)
    d_transformed = fisher_direction(X @ A + b, y)
    # mapping the transformed direction back through A recovers the original
    mapped = A @ d_transformed
    assert angle_between(d_original, mapped) < 1e-8


def test_lda_handles_singular_scatter_with_ridge():
    X = np.array([[0.0, 0.0], [1.0, 2.0], [2.0, 4.0], [3.0, 6.0],
                  [0.0, 1.0], [1.0, 3.0], [2.0, 5.0], [3.0, 7.0]])
    y = np.array([0, 0, 0, 0, 1, 1, 1, 1])
    direction = fisher_direction(X, y)  # second column = 2*first + class: singular Sw
    assert np.isfinite(direction).all()
    scores = X @ direction
    assert scores[y == 1].mean() > scores[y == 0].mean()


# -- PCA ----------------------------------------------------------------------

def test_pca_on_a_line_concentrates_variance_in_first_component():
    t = np.linspace(-2, 2, 25)
    X = np.column_stack([t, 2 * t])
    _, reducer = reduce_pca(X, 2)
    first = reducer.components_[0]
    assert angle_between(first, np.array([1.0, 2.0])) < 1e-10
    assert reducer.explained_variance_[1] == pytest.approx(0.0, abs=1e-12)


def test_pca_components_orthonormal_and_variances_non_increasing():
    rng = np.random.default_rng(9)
    X = rng.normal(size=(60, 7)) * np.arange(1, 8)
    _, reducer = reduce_pca(X, 5)
    gram = reducer.components_ @ reducer.components_.T
    assert np.allclose(gram, np.eye(5), atol=1e-8)
    ev = reducer.explained_variance_
    assert all(ev[i] >= ev[i + 1] - 1e-12 for i in range(len(ev) - 1))


def test_pca_eigenvalues_match_characteristic_polynomial_roots():
    # fixed 3x3 covariance; the oracle solves the characteristic cubic directly
    C = np.array([[4.0, 1.0, 0.5], [1.0, 3.0, 0.2], [0.5, 0.2, 2.0]])
    # synthesize data whose sample covariance is exactly C via its square root
    root = np.linalg.cholesky(C)
    n = 200
    Z = np.random.default_rng(4).normal(size=(n, 3))
    Z = Z - Z.mean(axis=0)
    # whiten Z exactly, then color by root -> sample covariance exactly C
    cov_z = Z.T @ Z / (n - 1)
    Z_white = Z @ np.linalg.inv(np.linalg.cholesky(cov_z)).T
    X = Z_white @ root.T
    _, reducer = reduce_pca(X, 3)
    trace = C.trace()
    minors = (C[0, 0] * C[1, 1] - C[0, 1] ** 2) \
        + (C[0, 0] * C[2, 2] - C[0, 2] ** 2) \
        + (C[1, 1] * C[2, 2] - C[1, 2] ** 2)
    det = np.linalg.det(C)
    roots = np.roots([1.0, -trace, minors, -det])
    assert np.allclose(sorted(reducer.explained_variance_, reverse=True),
                       sorted(roots.real, reverse=True), atol=1e-8)


def test_pca_permutation_equivariance():
    rng = np.random.default_rng(10)
    X = rng.normal(size=(50, 4)) * np.array([3.0, 1.0, 2.0, 0.5])
    perm = [2, 0, 3, 1]
    _, base = reduce_pca(X, 3)
    _, permuted = reduce_pca(X[:, perm], 3)
    for i in range(3):
        assert np.allclose(np.abs(base.components_[i][perm]),
                           np.abs(permuted.components_[i]), atol=1e-8)
    assert np.allclose(base.explained_variance_, permuted.explained_variance_, atol=1e-10)


def test_pca_rejects_too_many_components():
    X = np.zeros((5, 3))
    with pytest.raises(InputError):
        reduce_pca(X, 4)
    with pytest.raises(InputError):
        PCAReducer(0)


def test_lda_transform_before_fit_rejected():
    with pytest.raises(InputError):
        LDAReducer().transform(np.zeros((2, 2)))
