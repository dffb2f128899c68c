"""
Dynamics Service Module

This module implements the two-spin model H = sigma.n_a (x) I + I (x) sigma.n_b
with hbar = 1 and unit field strength: closed-form propagators, unitary state
evolution, and the time-evolution metrics (trace distance, fidelity analog,
kickoff coefficient, energy moments, orthogonality times).
"""

import logging
import math
from typing import Optional, Union

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ..config.rules import TOLERANCES
from ..config.settings import get_lab_setting
from ..models import (
    BlochDirection, DensityMatrix, EnergyMoments, KickoffResult,
    MagnetConfig, PureState, TimeSeries,
)
from .error_handler import LinalgError, PreconditionError, ValidationError
from .linalg_core import (
    IDENTITY_2, dagger, eigvalsh_batch, kron, kron_batch, spin_operator,
)
from .state_service import StateService

logger = logging.getLogger(__name__)

StateLike = Union[DensityMatrix, np.ndarray]


def _mat(rho: StateLike) -> np.ndarray:
    return rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=np.complex128)


class DynamicsService:
    """
    Service class for time evolution under local magnetic fields.
    Propagators use the closed form u(t) = cos t I - i sin t sigma.n, never a
    numeric matrix exponential.
    """

    # ------------------------------------------------------------------
    # Hamiltonian and propagators
    # ------------------------------------------------------------------

    @staticmethod
    def hamiltonian(config: MagnetConfig) -> np.ndarray:
        """H = (sigma.n_a) (x) I + I (x) (sigma.n_b)."""
        op_a = spin_operator(config.dir_a.vector)
        op_b = spin_operator(config.dir_b.vector)
        return kron(op_a, IDENTITY_2) + kron(IDENTITY_2, op_b)

    @staticmethod
    def propagator_single(direction: BlochDirection, t: float) -> np.ndarray:
        """u(t) = cos t I - i sin t (sigma.n) for one spin."""
        return math.cos(t) * IDENTITY_2 - 1j * math.sin(t) * spin_operator(direction.vector)

    @staticmethod
    def propagator(config: MagnetConfig, t: float) -> np.ndarray:
        return np.kron(DynamicsService.propagator_single(config.dir_a, t),
                       DynamicsService.propagator_single(config.dir_b, t))

    @staticmethod
    def single_propagators(vectors: np.ndarray, times: np.ndarray) -> np.ndarray:
        """
        Stacked single-spin propagators.

        Args:
            vectors: Field unit vectors, shape (..., 3)
            times: Times, broadcastable against the leading axes of vectors

        Returns:
            Array of shape broadcast(...) + (2, 2)
        """
        times = np.asarray(times, dtype=np.float64)[..., None, None]
        ops = spin_operator(vectors)
        return np.cos(times) * IDENTITY_2 - 1j * np.sin(times) * ops

    @staticmethod
    def propagators_over_time(config: MagnetConfig, times: np.ndarray) -> np.ndarray:
        """Full propagators U(t) for every t in times, shape (T, 4, 4)."""
        times = np.asarray(times, dtype=np.float64)
        u_a = DynamicsService.single_propagators(config.dir_a.vector, times)
        u_b = DynamicsService.single_propagators(config.dir_b.vector, times)
        return kron_batch(u_a, u_b)

    # ------------------------------------------------------------------
    # Evolution and distances
    # ------------------------------------------------------------------

    @staticmethod
    def evolve(rho0: DensityMatrix, config: MagnetConfig, t: float) -> DensityMatrix:
        """rho(t) = U(t) rho0 U(t)^dagger."""
        unitary = DynamicsService.propagator(config, t)
        evolved = unitary @ rho0.mat @ dagger(unitary)
        return DensityMatrix(mat=0.5 * (evolved + dagger(evolved)))

    @staticmethod
    def trace_distance(rho: StateLike, sigma: StateLike) -> float:
        """D(rho, sigma) = 1/2 tr|rho - sigma|, clipped to [0, 1]."""
        diff = _mat(rho) - _mat(sigma)
        value = 0.5 * float(np.sum(np.abs(eigvalsh_batch(diff))))
        return min(max(value, 0.0), 1.0)

    @staticmethod
    def evolved_distances(rho0: StateLike, unitaries: np.ndarray) -> np.ndarray:
        """Trace distances between rho0 and U rho0 U^dagger for a stack of unitaries."""
        mat = _mat(rho0)
        evolved = unitaries @ mat @ dagger(unitaries)
        values = 0.5 * np.sum(np.abs(eigvalsh_batch(mat - evolved)), axis=-1)
        return np.clip(values, 0.0, 1.0)

    @staticmethod
    def default_time_grid(t_max: float = math.pi, points: int = None) -> np.ndarray:
        """
        Uniform grid on [0, t_max] with inclusive endpoints.

        The default 721 points on [0, pi] place pi/4 and pi/2 on the grid.

        Raises:
            ValidationError: If points < 2 or t_max <= 0
        """
        points = get_lab_setting('DEFAULT_TIME_POINTS') if points is None else points
        if points < 2:
            raise ValidationError(f"A time grid needs at least 2 points, got {points}")
        if not (t_max > 0.0 and math.isfinite(t_max)):
            raise ValidationError(f"t_max must be positive and finite, got {t_max}")
        return np.linspace(0.0, t_max, points)

    @staticmethod
    def distance_series(rho0: DensityMatrix, config: MagnetConfig,
                        grid: Optional[np.ndarray] = None) -> TimeSeries:
        """D(rho0, rho(t)) at each grid point."""
        times = DynamicsService.default_time_grid() if grid is None else np.asarray(grid, dtype=np.float64)
        unitaries = DynamicsService.propagators_over_time(config, times)
        values = DynamicsService.evolved_distances(rho0, unitaries)
        return TimeSeries(times=times, values=values)

    @staticmethod
    def d_dif(rho0: DensityMatrix, config: MagnetConfig) -> float:
        """D(pi/4) - D(pi/2): distance gained by the fastest half-cycle."""
        unitaries = DynamicsService.propagators_over_time(config, np.array([math.pi / 4, math.pi / 2]))
        d_quarter, d_half = DynamicsService.evolved_distances(rho0, unitaries)
        return float(d_quarter - d_half)

    # ------------------------------------------------------------------
    # Short-time behaviour
    # ------------------------------------------------------------------

    @staticmethod
    def fidelity(rho0: DensityMatrix, config: MagnetConfig, t: float) -> float:
        """
        Fidelity analog F = tr(rho0 U rho0 U^dagger) / tr(rho0^2).

        Raises:
            LinalgError: If tr(rho0^2) is numerically zero
        """
        mat = rho0.mat
        purity = float(np.real(np.trace(mat @ mat)))
        if purity <= 1e-12:
            raise LinalgError(f"tr(rho^2) = {purity:.3e} too small for the fidelity analog")
        unitary = DynamicsService.propagator(config, t)
        overlap = np.real(np.trace(mat @ unitary @ mat @ dagger(unitary)))
        return float(overlap / purity)

    @staticmethod
    def kickoff_rates(rho: StateLike, hamiltonians: np.ndarray) -> np.ndarray:
        """
        Decay coefficients (tr(rho^2 H^2) - tr(rho H rho H)) / tr(rho^2) for stacked H.

        Evaluated as ||[rho, H]||_F^2 / (2 tr rho^2), which is non-negative by construction.
        """
        mat = _mat(rho)
        purity = float(np.real(np.trace(mat @ mat)))
        commutator = mat @ hamiltonians - hamiltonians @ mat
        return np.sum(np.abs(commutator) ** 2, axis=(-2, -1)) / (2.0 * purity)

    @staticmethod
    def kickoff(rho: DensityMatrix, config: MagnetConfig) -> KickoffResult:
        """Kickoff coefficient 1/tau^2; a stationary state carries tau_sq = None."""
        rate = float(DynamicsService.kickoff_rates(rho, DynamicsService.hamiltonian(config)))
        if rate <= TOLERANCES['STATIONARY_RATE']:
            return KickoffResult(rate=0.0, tau_sq=None)
        return KickoffResult(rate=rate, tau_sq=1.0 / rate)

    @staticmethod
    def energy_moments(rho: DensityMatrix, config: MagnetConfig) -> EnergyMoments:
        """<E> = tr(rho H) and variance tr(rho H^2) - <E>^2."""
        ham = DynamicsService.hamiltonian(config)
        mean = float(np.real(np.trace(rho.mat @ ham)))
        second = float(np.real(np.trace(rho.mat @ ham @ ham)))
        variance = second - mean * mean
        if variance < -TOLERANCES['VARIANCE_CLAMP']:
            logger.warning(f"Energy variance {variance:.3e} below clamp tolerance")
        return EnergyMoments(mean=mean, variance=max(variance, 0.0))

    # ------------------------------------------------------------------
    # Orthogonality times for pure states
    # ------------------------------------------------------------------

    @staticmethod
    def t_perp_pure(alpha: float, config: MagnetConfig) -> float:
        """
        Closed-form orthogonality time of alpha|11> + beta|00>: arccot sqrt(<(sigma.n_a)(sigma.n_b)>).

        Args:
            alpha: Amplitude in [0, 1]; beta = sqrt(1 - alpha^2)
            config: Field directions satisfying <sigma.n_a> = <sigma.n_b> = 0

        Returns:
            Time in (0, pi/2]

        Raises:
            ValidationError: If alpha is outside [0, 1]
            PreconditionError: If a local expectation is non-zero or the correlator is negative
        """
        spec = StateService.family_spec('pure_phi', alpha)
        psi = StateService.pure_family_state(spec).amps
        op_a = kron(spin_operator(config.dir_a.vector), IDENTITY_2)
        op_b = kron(IDENTITY_2, spin_operator(config.dir_b.vector))

        local_a = float(np.real(psi.conj() @ op_a @ psi))
        local_b = float(np.real(psi.conj() @ op_b @ psi))
        tolerance = TOLERANCES['CONSTRAINT']
        if abs(local_a) > tolerance:
            raise PreconditionError(f"<sigma.n_a> = {local_a:.3e} must vanish for t_perp", 'LOCAL_A_NONZERO')
        if abs(local_b) > tolerance:
            raise PreconditionError(f"<sigma.n_b> = {local_b:.3e} must vanish for t_perp", 'LOCAL_B_NONZERO')

        correlator = float(np.real(psi.conj() @ op_a @ op_b @ psi))
        if correlator < -tolerance:
            raise PreconditionError(
                f"<(sigma.n_a)(sigma.n_b)> = {correlator:.3e} is negative; the state never becomes orthogonal",
                'NEGATIVE_CORRELATOR',
            )
        return math.atan2(1.0, math.sqrt(max(correlator, 0.0)))

    @staticmethod
    def t_perp_numeric(psi: PureState, config: MagnetConfig, resolution: int = None) -> Optional[float]:
        """
        First time in (0, pi] with |<psi|U(t)|psi>| < 1e-8, or None if the state never gets there.

        A grid scan brackets candidates: sign changes of Re<psi|U|psi> are refined with
        Brent's root finder, tangential zeros (local minima of the modulus below 1e-3)
        with a bounded scalar minimizer.

        Raises:
            ValidationError: If resolution < 100
        """
        resolution = get_lab_setting('T_PERP_RESOLUTION') if resolution is None else resolution
        if resolution < 100:
            raise ValidationError(f"resolution must be at least 100, got {resolution}")

        amps = psi.amps
        u_a = lambda t: DynamicsService.single_propagators(config.dir_a.vector, t)
        u_b = lambda t: DynamicsService.single_propagators(config.dir_b.vector, t)

        def overlap(times):
            unitaries = kron_batch(u_a(times), u_b(times))
            return np.einsum('i,...ij,j->...', amps.conj(), unitaries, amps)

        times = np.linspace(0.0, math.pi, resolution + 1)
        values = overlap(times)
        modulus = np.abs(values)
        target = TOLERANCES['NUMERIC_ORTHOGONAL']
        scan = TOLERANCES['ORTHOGONAL_SCAN']

        for i in range(1, resolution + 1):
            if modulus[i] < target:
                return float(times[i])
            lo, hi = times[i - 1], times[i]
            if np.sign(values[i - 1].real) != np.sign(values[i].real):
                root = brentq(lambda t: float(overlap(t).real), lo, hi, xtol=1e-14, rtol=1e-15)
                if abs(overlap(root)) < target:
                    return float(root)
            right = modulus[i + 1] if i < resolution else np.inf
            if modulus[i] < scan and modulus[i] <= modulus[i - 1] and modulus[i] <= right:
                upper = times[i + 1] if i < resolution else times[i]
                found = minimize_scalar(lambda t: float(abs(overlap(t))), bounds=(lo, upper),
                                        method='bounded', options={'xatol': 1e-12})
                if abs(overlap(found.x)) < target:
                    return float(found.x)

        logger.debug("No orthogonal time found in (0, pi]")
        return None


__all__ = ['DynamicsService', 'StateLike']
