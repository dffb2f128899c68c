"""
Quantify Service Module

This module provides the correlation and mixedness measures used by the lab:
Wootters concurrence, the PPT separability test, von Neumann entropy in bits,
reduced states and the quantum mutual information.
"""

import logging
from typing import Tuple, Union

import numpy as np

from ..config.rules import TOLERANCES
from ..models import DensityMatrix, MeasureReport
from .error_handler import LinalgError
from .linalg_core import (
    SIGMA_Y, as_cmat, clamped_eigenvalues, eig_hermitian, partial_trace, partial_transpose,
)

logger = logging.getLogger(__name__)

_SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)


def _mat(rho: Union[DensityMatrix, np.ndarray]) -> np.ndarray:
    return rho.mat if isinstance(rho, DensityMatrix) else as_cmat(rho)


class QuantifyService:
    """Service class for entanglement and information measures."""

    @staticmethod
    def concurrence(rho: DensityMatrix) -> float:
        """
        Wootters concurrence max(0, l1 - l2 - l3 - l4).

        The l_i are the descending eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)),
        rho~ = (sy (x) sy) rho* (sy (x) sy), with the conjugate taken entrywise in the
        computational basis. They equal the singular values of sqrt(rho)* (sy (x) sy) sqrt(rho),
        which avoids a second square root of roundoff-sized eigenvalues.
        """
        values, vectors = eig_hermitian(_mat(rho))
        if values[0] < -TOLERANCES['PSD_CLAMP']:
            raise LinalgError(f"State has negative eigenvalue {values[0]:.3e}")
        values = np.where(values < TOLERANCES['EIGEN_FLOOR'], 0.0, values)
        root = (vectors * np.sqrt(values)) @ vectors.conj().T
        singular = np.linalg.svd(root.conj() @ _SPIN_FLIP @ root, compute_uv=False)
        value = float(singular[0] - singular[1] - singular[2] - singular[3])
        if value <= TOLERANCES['CONCURRENCE_ZERO']:
            return 0.0
        return min(value, 1.0)

    @staticmethod
    def ppt_min_eigenvalue(rho: DensityMatrix) -> float:
        """Smallest eigenvalue of the partial transpose on qubit b."""
        return float(eig_hermitian(partial_transpose(_mat(rho), 'B')).eigenvalues[0])

    @staticmethod
    def is_separable_ppt(rho: DensityMatrix) -> bool:
        """
        Peres-Horodecki test, exact for two qubits.

        States whose partial transpose has its lowest eigenvalue in [-1e-9, 0) count as separable.
        """
        return QuantifyService.ppt_min_eigenvalue(rho) >= -TOLERANCES['PPT']

    @staticmethod
    def entropy_vn(rho: Union[DensityMatrix, np.ndarray]) -> float:
        """
        Von Neumann entropy -sum(l log2 l) with 0 log 0 = 0.

        Args:
            rho: Two-qubit DensityMatrix or a 2x2 / 4x4 density operator

        Raises:
            LinalgError: If an eigenvalue is below -1e-9 or the trace is off by more than 1e-9
        """
        mat = _mat(rho)
        trace = float(np.real(np.trace(mat)))
        if abs(trace - 1.0) > TOLERANCES['PSD_CLAMP']:
            raise LinalgError(f"Entropy needs a unit-trace operator, got trace {trace}")
        values = clamped_eigenvalues(mat)
        values = values[values > 0.0]
        return max(0.0, float(-np.sum(values * np.log2(values))))

    @staticmethod
    def reduced_states(rho: DensityMatrix) -> Tuple[np.ndarray, np.ndarray]:
        """Marginals (rho_A, rho_B)."""
        mat = _mat(rho)
        return partial_trace(mat, 'B'), partial_trace(mat, 'A')

    @staticmethod
    def mutual_information(rho: DensityMatrix) -> float:
        """I = S(rho_A) + S(rho_B) - S(rho_AB) in bits."""
        rho_a, rho_b = QuantifyService.reduced_states(rho)
        return (QuantifyService.entropy_vn(rho_a) + QuantifyService.entropy_vn(rho_b)
                - QuantifyService.entropy_vn(rho))

    @staticmethod
    def measure_report(rho: DensityMatrix) -> MeasureReport:
        """Bundle of every measure for one state."""
        rho_a, rho_b = QuantifyService.reduced_states(rho)
        entropy_a = QuantifyService.entropy_vn(rho_a)
        entropy_b = QuantifyService.entropy_vn(rho_b)
        entropy_ab = QuantifyService.entropy_vn(rho)
        concurrence = QuantifyService.concurrence(rho)
        separable = QuantifyService.is_separable_ppt(rho)
        if concurrence > 0.0 and separable:
            logger.debug(f"PPT separable state with concurrence {concurrence:.3e}")
            separable = False
        return MeasureReport(
            concurrence=concurrence,
            entropy_ab=entropy_ab,
            entropy_a=entropy_a,
            entropy_b=entropy_b,
            mutual_info=entropy_a + entropy_b - entropy_ab,
            separable=separable,
        )


__all__ = ['QuantifyService']
