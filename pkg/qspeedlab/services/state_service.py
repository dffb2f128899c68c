"""
State Service Module

This module provides constructors for every state family used by the lab
(Werner, Gisin-type, rho3, product mixture and the two pure families), the
Bell states, and the deterministic sampler of separable states.
"""

import logging
import math
from typing import Union

import numpy as np
from pydantic import ValidationError as PydanticValidationError

from ..config.rules import SAMPLER_TERMS_RANGE
from ..config.settings import get_lab_setting
from ..models import BellKind, DensityMatrix, FamilySpec, PureState, SeparableSample
from .error_handler import ValidationError
from .linalg_core import IDENTITY_2, IDENTITY_4, PAULIS

logger = logging.getLogger(__name__)

INV_SQRT2 = 1.0 / math.sqrt(2.0)
_KET_00 = np.array([1, 0, 0, 0], dtype=np.complex128)
_KET_11 = np.array([0, 0, 0, 1], dtype=np.complex128)


def _projector(ket: np.ndarray) -> np.ndarray:
    return np.outer(ket, ket.conj())


class StateService:
    """
    Service class for building two-qubit states.
    All constructors return validated DensityMatrix / PureState values.
    """

    BELL_AMPLITUDES = {
        'phi+': (INV_SQRT2, 0.0, 0.0, INV_SQRT2),
        'phi-': (INV_SQRT2, 0.0, 0.0, -INV_SQRT2),
        'psi+': (0.0, INV_SQRT2, INV_SQRT2, 0.0),
        'psi-': (0.0, INV_SQRT2, -INV_SQRT2, 0.0),
    }

    @staticmethod
    def bell_state(kind: BellKind) -> PureState:
        """
        Bell state with the standard sign conventions.

        Args:
            kind: One of 'phi+', 'phi-', 'psi+', 'psi-' (psi- is the singlet)

        Raises:
            ValidationError: If the kind is unknown
        """
        if kind not in StateService.BELL_AMPLITUDES:
            raise ValidationError(f"Unknown Bell state '{kind}'. Use one of: "
                                  f"{', '.join(StateService.BELL_AMPLITUDES)}")
        return PureState(amps=StateService.BELL_AMPLITUDES[kind])

    @staticmethod
    def family_spec(family: str, param: float) -> FamilySpec:
        """
        Validate a family name and parameter.

        Raises:
            ValidationError: If the family is unknown or the parameter is out of range
        """
        try:
            return FamilySpec(family=family, param=param)
        except PydanticValidationError as e:
            message = e.errors()[0].get('msg', str(e))
            raise ValidationError(f"Invalid state family '{family}' with parameter {param}: {message}",
                                  'INVALID_FAMILY', {'family': family, 'param': param}) from e

    @staticmethod
    def pure_family_state(spec: FamilySpec) -> PureState:
        """
        State vector of a pure family.

        pure_phi is alpha|11> + beta|00> with beta = sqrt(1 - alpha^2) (spin up is |1>);
        pure_ent is cos(gamma)|10> - sin(gamma)|01>.
        """
        if spec.family == 'pure_phi':
            alpha = spec.param
            beta = math.sqrt(max(0.0, 1.0 - alpha * alpha))
            return PureState(amps=(beta, 0.0, 0.0, alpha))
        if spec.family == 'pure_ent':
            gamma = spec.param
            return PureState(amps=(0.0, -math.sin(gamma), math.cos(gamma), 0.0))
        raise ValidationError(f"Family '{spec.family}' is mixed, not a pure family")

    @staticmethod
    def build_family(spec: Union[FamilySpec, dict]) -> DensityMatrix:
        """
        Density matrix of a named family.

        Args:
            spec: FamilySpec (or a dict with 'family' and 'param')

        Returns:
            DensityMatrix of the family at its parameter

        Raises:
            ValidationError: If the family or its parameter is invalid
        """
        if isinstance(spec, dict):
            spec = StateService.family_spec(spec.get('family'), spec.get('param'))

        x = spec.param
        psi_plus = _projector(np.array(StateService.BELL_AMPLITUDES['psi+'], dtype=np.complex128))
        p00 = _projector(_KET_00)
        p11 = _projector(_KET_11)

        if spec.family == 'werner':
            mat = (1.0 - x) / 4.0 * IDENTITY_4 + x * psi_plus
        elif spec.family == 'gisin':
            mat = (1.0 - x) / 2.0 * (p00 + p11) + x * psi_plus
        elif spec.family == 'rho3':
            mat = (1.0 - x) * p00 + x * psi_plus
        elif spec.family == 'product_mixture':
            mat = x * p11 + (1.0 - x) * p00
        else:
            return StateService.pure_family_state(spec).density()

        return DensityMatrix(mat=mat)

    @staticmethod
    def sample_separable(seed: int, index: int, max_terms: int = None) -> SeparableSample:
        """
        Deterministic random separable state for a (seed, index) key.

        The bit generator is SAMPLER_ALGORITHM (PCG64) seeded with SeedSequence([seed, index]). Draw order:
        K uniform on {1..max_terms}; K standard exponentials normalized to weights
        (flat Dirichlet); then per term cos(theta_a), phi_a, cos(theta_b), phi_b with
        cos(theta) uniform on [-1, 1) and phi uniform on [0, 2pi).

        Args:
            seed: Non-negative 64-bit campaign seed
            index: Non-negative sample index
            max_terms: Largest number of product terms, in [1, 16]

        Raises:
            ValidationError: If max_terms or the key is out of range
        """
        max_terms = get_lab_setting('SAMPLER_MAX_TERMS') if max_terms is None else max_terms
        low, high = SAMPLER_TERMS_RANGE
        if not (low <= max_terms <= high):
            raise ValidationError(f"max_terms must be in [{low}, {high}], got {max_terms}")
        if seed < 0 or index < 0 or seed >= 2 ** 64 or index >= 2 ** 64:
            raise ValidationError(f"seed and index must be unsigned 64-bit integers, got ({seed}, {index})")

        sequence = np.random.SeedSequence([seed, index])
        rng = np.random.Generator(getattr(np.random, get_lab_setting('SAMPLER_ALGORITHM'))(sequence))
        seed_tag = int(sequence.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))

        num_terms = int(rng.integers(1, max_terms + 1))
        weights = rng.standard_exponential(num_terms)
        weights = weights / weights.sum()

        mat = np.zeros((4, 4), dtype=np.complex128)
        for weight in weights:
            cos_a, phi_a, cos_b, phi_b = rng.uniform([-1.0, 0.0, -1.0, 0.0],
                                                      [1.0, 2 * math.pi, 1.0, 2 * math.pi])
            rho_a = StateService.qubit_from_bloch(cos_a, phi_a)
            rho_b = StateService.qubit_from_bloch(cos_b, phi_b)
            mat += weight * np.kron(rho_a, rho_b)

        logger.debug(f"Sampled separable state seed={seed} index={index} terms={num_terms}")
        return SeparableSample(state=DensityMatrix(mat=0.5 * (mat + mat.conj().T)),
                               num_terms=num_terms, seed_tag=seed_tag)

    @staticmethod
    def qubit_from_bloch(cos_theta: float, phi: float) -> np.ndarray:
        """Pure qubit density matrix (I + r . sigma) / 2 for the unit Bloch vector r."""
        sin_theta = math.sqrt(max(0.0, 1.0 - cos_theta * cos_theta))
        r = np.array([sin_theta * math.cos(phi), sin_theta * math.sin(phi), cos_theta])
        return 0.5 * (IDENTITY_2 + np.tensordot(r, PAULIS, axes=1))
