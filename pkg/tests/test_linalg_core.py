import numpy as np
import pytest

from qspeedlab.services.error_handler import LinalgError
from qspeedlab.services.linalg_core import (
    IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z, clamped_eigenvalues, eig_hermitian, kron,
    kron_batch, partial_trace, partial_transpose, spin_operator, sqrt_psd,
)


def random_qubit_operator(rng):
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return m


def random_psd(rng, dim=4):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return g @ g.conj().T


def test_kron_matches_numpy(rng):
    a, b = random_qubit_operator(rng), random_qubit_operator(rng)
    np.testing.assert_allclose(kron(a, b), np.kron(a, b))


def test_kron_rejects_wrong_dimension():
    with pytest.raises(LinalgError):
        kron(np.eye(4), SIGMA_X)


def test_kron_batch_matches_elementwise(rng):
    a = np.stack([random_qubit_operator(rng) for _ in range(5)])
    b = np.stack([random_qubit_operator(rng) for _ in range(5)])
    out = kron_batch(a, b)
    assert out.shape == (5, 4, 4)
    for i in range(5):
        np.testing.assert_allclose(out[i], np.kron(a[i], b[i]))


def test_spin_operator_axes():
    np.testing.assert_allclose(spin_operator([0, 0, 1]), SIGMA_Z)
    np.testing.assert_allclose(spin_operator([1, 0, 0]), SIGMA_X)
    stacked = spin_operator(np.array([[0, 1, 0], [0, 0, -1]]))
    np.testing.assert_allclose(stacked[0], SIGMA_Y)
    np.testing.assert_allclose(stacked[1], -SIGMA_Z)


def test_eig_hermitian_reconstructs_and_sorts(rng):
    m = random_psd(rng) - 2 * np.eye(4)
    values, vectors = eig_hermitian(m)
    assert np.all(np.diff(values) >= 0)
    np.testing.assert_allclose(vectors @ np.diag(values) @ vectors.conj().T, m, atol=1e-10)
    np.testing.assert_allclose(vectors.conj().T @ vectors, np.eye(4), atol=1e-12)


def test_eig_hermitian_rejects_non_hermitian():
    with pytest.raises(LinalgError):
        eig_hermitian(np.array([[0, 1], [0, 0]]))


def test_eig_hermitian_rejects_nan():
    with pytest.raises(LinalgError):
        eig_hermitian(np.array([[np.nan, 0], [0, 1]]))


def test_sqrt_psd_squares_back(rng):
    m = random_psd(rng)
    root = sqrt_psd(m)
    np.testing.assert_allclose(root @ root, m, atol=1e-10)
    np.testing.assert_allclose(root, root.conj().T, atol=1e-12)


def test_sqrt_psd_rejects_negative_matrix():
    with pytest.raises(LinalgError):
        sqrt_psd(np.diag([1.0, -0.5]))


def test_clamped_eigenvalues_clips_roundoff():
    values = clamped_eigenvalues(np.diag([0.5, 0.5 + 1e-12, -1e-12, 0.0]))
    assert values.min() == 0.0


def test_partial_trace_of_product(rng):
    a = random_psd(rng, 2)
    b = random_psd(rng, 2)
    product = np.kron(a, b)
    np.testing.assert_allclose(partial_trace(product, 'B'), a * np.trace(b), atol=1e-12)
    np.testing.assert_allclose(partial_trace(product, 'A'), b * np.trace(a), atol=1e-12)


def test_partial_transpose_of_product(rng):
    a = random_qubit_operator(rng)
    b = random_qubit_operator(rng)
    product = np.kron(a, b)
    np.testing.assert_allclose(partial_transpose(product, 'B'), np.kron(a, b.T))
    np.testing.assert_allclose(partial_transpose(product, 'A'), np.kron(a.T, b))


def test_partial_trace_unknown_subsystem():
    with pytest.raises(LinalgError):
        partial_trace(np.eye(4), 'C')


def test_partial_trace_needs_four_by_four():
    with pytest.raises(LinalgError):
        partial_trace(IDENTITY_2, 'A')
