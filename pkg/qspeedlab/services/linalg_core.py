"""
Linear Algebra Core Module

Dense complex linear algebra for 2x2 and 4x4 matrices: Kronecker products,
Hermitian eigendecomposition, PSD square roots, partial trace and partial
transpose. Basis ordering is |00>, |01>, |10>, |11> with qubit a as the left
factor throughout the package.
"""

import logging
from typing import Literal, NamedTuple

import numpy as np

from ..config.rules import TOLERANCES
from .error_handler import LinalgError

logger = logging.getLogger(__name__)

Subsystem = Literal['A', 'B']

IDENTITY_2 = np.eye(2, dtype=np.complex128)
IDENTITY_4 = np.eye(4, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])


class EigenDecomposition(NamedTuple):
    """Ascending eigenvalues with orthonormal eigenvectors as columns."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_cmat(m, dims=(2, 4)) -> np.ndarray:
    """
    Coerce input to a finite square complex128 matrix of an allowed dimension.

    Raises:
        LinalgError: If the matrix is not square, has a bad dimension or holds NaN/Inf
    """
    mat = np.asarray(m, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] not in dims:
        raise LinalgError(f"Expected a square matrix of dimension {dims}, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise LinalgError("Matrix has non-finite entries")
    return mat


def dagger(m: np.ndarray) -> np.ndarray:
    return np.swapaxes(np.conj(m), -1, -2)


def kron(a, b) -> np.ndarray:
    """Kronecker product a (x) b of two 2x2 matrices."""
    a = as_cmat(a, dims=(2,))
    b = as_cmat(b, dims=(2,))
    return np.kron(a, b)


def kron_batch(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker products of stacked 2x2 matrices, broadcasting over leading axes."""
    out = np.einsum('...ij,...kl->...ikjl', a, b)
    return out.reshape(out.shape[:-4] + (4, 4))


def spin_operator(n: np.ndarray) -> np.ndarray:
    """sigma . n for one unit vector (shape (3,)) or a stack (shape (..., 3))."""
    return np.tensordot(np.asarray(n, dtype=np.float64), PAULIS, axes=([-1], [0]))


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - dagger(m))))


def eig_hermitian(m) -> EigenDecomposition:
    """
    Eigendecomposition of a Hermitian matrix.

    Args:
        m: 2x2 or 4x4 matrix, Hermitian within 1e-10

    Returns:
        EigenDecomposition with ascending eigenvalues

    Raises:
        LinalgError: If the input is not Hermitian or LAPACK fails to converge
    """
    mat = as_cmat(m)
    defect = hermiticity_defect(mat)
    if defect > TOLERANCES['HERMITIAN']:
        raise LinalgError(f"Matrix is not Hermitian (max |m - m^dagger| = {defect:.3e})",
                          details={'defect': defect})
    try:
        values, vectors = np.linalg.eigh(0.5 * (mat + dagger(mat)))
    except np.linalg.LinAlgError as e:
        raise LinalgError(f"Hermitian eigensolver did not converge: {e}") from e
    return EigenDecomposition(values, vectors)


def eigvalsh_batch(m: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a stack of Hermitian matrices; no precondition checks."""
    try:
        return np.linalg.eigvalsh(0.5 * (m + dagger(m)))
    except np.linalg.LinAlgError as e:
        raise LinalgError(f"Hermitian eigensolver did not converge: {e}") from e


def clamped_eigenvalues(m) -> np.ndarray:
    """
    Eigenvalues of a PSD matrix with roundoff negatives set to zero.

    Raises:
        LinalgError: If an eigenvalue lies below -1e-9
    """
    values = eig_hermitian(m).eigenvalues
    if values[0] < -TOLERANCES['PSD_CLAMP']:
        raise LinalgError(f"Matrix is not positive semidefinite (eigenvalue {values[0]:.3e})",
                          details={'min_eigenvalue': float(values[0])})
    return np.clip(values, 0.0, None)


def sqrt_psd(m) -> np.ndarray:
    """
    Hermitian PSD square root R with R @ R = m.

    Raises:
        LinalgError: If m has an eigenvalue below -1e-9
    """
    values, vectors = eig_hermitian(m)
    if values[0] < -TOLERANCES['PSD_CLAMP']:
        raise LinalgError(f"Matrix is not positive semidefinite (eigenvalue {values[0]:.3e})",
                          details={'min_eigenvalue': float(values[0])})
    roots = np.sqrt(np.clip(values, 0.0, None))
    root = (vectors * roots) @ dagger(vectors)
    return 0.5 * (root + dagger(root))


def _split(m) -> np.ndarray:
    mat = as_cmat(m, dims=(4,))
    # indices (a_row, b_row, a_col, b_col)
    return mat.reshape(2, 2, 2, 2)


def partial_trace(m, subsystem: Subsystem) -> np.ndarray:
    """
    Trace out one qubit of a 4x4 operator.

    Args:
        m: 4x4 operator
        subsystem: 'A' or 'B', the qubit to trace out

    Returns:
        2x2 reduced operator on the remaining qubit
    """
    t = _split(m)
    if subsystem == 'B':
        return np.einsum('ikjk->ij', t)
    if subsystem == 'A':
        return np.einsum('kikj->ij', t)
    raise LinalgError(f"Unknown subsystem '{subsystem}'")


def partial_transpose(m, subsystem: Subsystem) -> np.ndarray:
    """Transpose the indices of one qubit of a 4x4 operator."""
    t = _split(m)
    if subsystem == 'B':
        return t.transpose(0, 3, 2, 1).reshape(4, 4)
    if subsystem == 'A':
        return t.transpose(2, 1, 0, 3).reshape(4, 4)
    raise LinalgError(f"Unknown subsystem '{subsystem}'")


__all__ = [
    'EigenDecomposition', 'IDENTITY_2', 'IDENTITY_4', 'SIGMA_X', 'SIGMA_Y', 'SIGMA_Z', 'PAULIS',
    'as_cmat', 'dagger', 'kron', 'kron_batch', 'spin_operator', 'eig_hermitian',
    'eigvalsh_batch', 'clamped_eigenvalues', 'sqrt_psd', 'partial_trace', 'partial_transpose',
]
