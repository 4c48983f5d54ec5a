import numpy as np
import pytest
from oracles import pca_oracle

from aslface.errors import KTooLarge, TooFewSamples
from aslface.landmarks import SentenceClass
from aslface.pca import (
    FeatureMatrix,
    fit_pca,
    inverse_transform,
    jacobi_eigh,
    transform,
)

D = 67


def _fm(rows):
    rows = np.asarray(rows, dtype=float)
    n = rows.shape[0]
    return FeatureMatrix(rows, (SentenceClass.AS,) * n, tuple(f"r{i}" for i in range(n)))


def test_too_few_samples():
    with pytest.raises(TooFewSamples):
        fit_pca(_fm(np.zeros((1, D))), 1)


def test_k_too_large():
    with pytest.raises(KTooLarge):
        fit_pca(_fm(np.zeros((3, D))), 3)  # k must be <= n-1


def test_identical_rows_zero_variance():
    rows = np.tile(np.linspace(0, 3, D), (2, 1))
    model = fit_pca(_fm(rows), 1)
    assert model.explained_variance == pytest.approx([0.0], abs=1e-12)
    assert np.linalg.norm(model.components[0]) == pytest.approx(1.0, abs=1e-8)
    # deterministic: refit gives the identical component
    again = fit_pca(_fm(rows), 1)
    assert np.array_equal(model.components, again.components)


def test_rank_one_line():
    rows = np.zeros((6, D))
    t = np.arange(6, dtype=float)
    rows[:, 0] = t
    rows[:, 1] = 2 * t
    model = fit_pca(_fm(rows), 3)
    expected = np.zeros(D)
    expected[0], expected[1] = 1 / np.sqrt(5), 2 / np.sqrt(5)
    assert model.components[0] == pytest.approx(expected, abs=1e-8)
    assert model.explained_variance[1:] == pytest.approx([0.0, 0.0], abs=1e-9)


def test_matches_dense_eigensolve_oracle():
    rng = np.random.default_rng(7)
    x = rng.normal(size=(10, D))
    model = fit_pca(_fm(x), 4)
    mean, comps, eigvals = pca_oracle(x, 4)
    assert model.mean == pytest.approx(mean, abs=1e-12)
    assert model.components == pytest.approx(comps, abs=1e-6)
    assert model.explained_variance == pytest.approx(eigvals, abs=1e-6)


def test_orthonormality():
    rng = np.random.default_rng(8)
    model = fit_pca(_fm(rng.normal(size=(30, D))), 5)
    gram = model.components @ model.components.T
    assert gram == pytest.approx(np.eye(5), abs=1e-8)


def test_eigenvalue_sum_equals_trace():
    rng = np.random.default_rng(9)
    x = rng.normal(size=(100, D))
    model = fit_pca(_fm(x), D)
    cov = np.cov(x, rowvar=False)
    assert model.explained_variance.sum() == pytest.approx(np.trace(cov), abs=1e-6)


def test_transform_centering_and_orthonormality():
    rng = np.random.default_rng(10)
    model = fit_pca(_fm(rng.normal(size=(20, D))), 4)
    assert transform(model, model.mean) == pytest.approx(np.zeros(4), abs=1e-9)
    z = transform(model, model.mean + model.components[0])
    assert z == pytest.approx([1.0, 0.0, 0.0, 0.0], abs=1e-9)


def test_transform_matches_manual_dot_products():
    rng = np.random.default_rng(11)
    x = rng.normal(size=(20, D))
    model = fit_pca(_fm(x), 4)
    v = rng.normal(size=D)
    expected = [float(np.dot(c, v - model.mean)) for c in model.components]
    assert transform(model, v) == pytest.approx(expected, abs=1e-12)


def test_inverse_transform_identities():
    rng = np.random.default_rng(12)
    x = rng.normal(size=(25, D))
    model = fit_pca(_fm(x), 4)
    assert inverse_transform(model, np.zeros(4)) == pytest.approx(model.mean)
    # round trip on k-vectors
    z = rng.normal(size=4)
    assert transform(model, inverse_transform(model, z)) == pytest.approx(z, abs=1e-9)
    # reconstruction never increases distance from the mean
    for _ in range(10):
        v = rng.normal(size=D)
        recon = inverse_transform(model, transform(model, v))
        assert np.sum((v - recon) ** 2) <= np.sum((v - model.mean) ** 2) + 1e-9
        # residual orthogonal to every component
        assert model.components @ (v - recon) == pytest.approx(np.zeros(4), abs=1e-8)


def test_explained_variance_non_increasing():
    rng = np.random.default_rng(13)
    model = fit_pca(_fm(rng.normal(size=(40, D))), 10)
    assert np.all(np.diff(model.explained_variance) <= 1e-12)


def test_jacobi_on_known_matrix():
    a = np.array([[2.0, 1.0], [1.0, 2.0]])
    eigvals, eigvecs = jacobi_eigh(a)
    assert sorted(eigvals) == pytest.approx([1.0, 3.0], abs=1e-12)
    for i in range(2):
        assert a @ eigvecs[:, i] == pytest.approx(eigvals[i] * eigvecs[:, i], abs=1e-10)
