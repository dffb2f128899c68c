"""
Angle Optimizer Service Module

This module searches the magnet angles (theta_a, phi_a, theta_b, phi_b) that
maximize one of three speed objectives: the kickoff coefficient, the period
objective D(pi/4) - D(pi/2), and the largest trace distance reached on the
default time grid.

The search is a vectorized coarse grid followed by Nelder-Mead refinement of
the best grid seeds.
"""

import logging
import math
from typing import List, Tuple, Union

import numpy as np
from scipy.optimize import minimize

from ..config.settings import get_lab_setting
from ..models import DensityMatrix, MagnetConfig, Objective, OptimizationResult
from .dynamics_service import DynamicsService
from .error_handler import ValidationError
from .linalg_core import IDENTITY_2, kron_batch, spin_operator

logger = logging.getLogger(__name__)

# Largest number of 4x4 propagators built at once for the max_distance objective
_BATCH_LIMIT = 65536


def _unit_vectors(theta, phi) -> np.ndarray:
    theta = np.asarray(theta, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.float64)
    return np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1)


class AngleOptimizer:
    """
    Service class for magnet-angle optimization.
    All methods are deterministic for identical inputs.
    """

    @staticmethod
    def half_period_grid(stride: int = 1) -> np.ndarray:
        """
        Points of the default time grid in [0, pi/2].

        D(t) = D(pi - t) because U(pi - t) = U(t)^dagger, so the maximum over
        the full default grid is attained on its first half.
        """
        grid = DynamicsService.default_time_grid()
        return grid[:(grid.size + 1) // 2][::stride]

    @staticmethod
    def objective_values(rho: Union[DensityMatrix, np.ndarray], vec_a: np.ndarray, vec_b: np.ndarray,
                         objective: Objective, times: np.ndarray = None) -> np.ndarray:
        """
        Objective values for stacked field directions.

        Args:
            rho: State
            vec_a: Unit vectors for spin a, shape (M, 3)
            vec_b: Unit vectors for spin b, shape (M, 3)
            objective: Objective to evaluate
            times: Time points for max_distance (defaults to half_period_grid())

        Returns:
            Array of shape (M,)
        """
        mat = rho.mat if isinstance(rho, DensityMatrix) else rho
        objective = Objective(objective)

        if objective is Objective.KICKOFF:
            ham = (kron_batch(spin_operator(vec_a), IDENTITY_2)
                   + kron_batch(IDENTITY_2, spin_operator(vec_b)))
            return DynamicsService.kickoff_rates(mat, ham)

        if objective is Objective.PERIOD_DDIF:
            def distance_at(t):
                unitaries = kron_batch(DynamicsService.single_propagators(vec_a, t),
                                       DynamicsService.single_propagators(vec_b, t))
                return DynamicsService.evolved_distances(mat, unitaries)
            return distance_at(math.pi / 4) - distance_at(math.pi / 2)

        times = AngleOptimizer.half_period_grid() if times is None else np.asarray(times)
        best = np.zeros(vec_a.shape[0])
        block = max(1, _BATCH_LIMIT // vec_a.shape[0])
        for start in range(0, times.size, block):
            chunk = times[start:start + block][:, None]
            unitaries = kron_batch(DynamicsService.single_propagators(vec_a, chunk),
                                   DynamicsService.single_propagators(vec_b, chunk))
            best = np.maximum(best, DynamicsService.evolved_distances(mat, unitaries).max(axis=0))
        return best

    @staticmethod
    def evaluate_objective(rho: DensityMatrix, config: MagnetConfig, objective: Objective) -> float:
        """
        Objective value at one configuration.

        kickoff is the rate 1/tau^2, period_ddif is D(pi/4) - D(pi/2) and
        max_distance is the maximum of D over the default time grid.
        """
        vec_a = config.dir_a.vector[None, :]
        vec_b = config.dir_b.vector[None, :]
        return float(AngleOptimizer.objective_values(rho, vec_a, vec_b, objective)[0])

    @staticmethod
    def coarse_directions(points: int = None) -> Tuple[np.ndarray, np.ndarray]:
        """
        Grid of field directions ordered by (theta, phi).

        theta takes the cell midpoints (i + 1/2) pi / points, phi takes k 2pi / points.

        Returns:
            (angles of shape (points^2, 2), unit vectors of shape (points^2, 3))
        """
        points = get_lab_setting('ANGLE_GRID_POINTS') if points is None else points
        thetas = (np.arange(points) + 0.5) * math.pi / points
        phis = np.arange(points) * 2.0 * math.pi / points
        theta_grid, phi_grid = np.meshgrid(thetas, phis, indexing='ij')
        angles = np.stack([theta_grid.ravel(), phi_grid.ravel()], axis=-1)
        return angles, _unit_vectors(angles[:, 0], angles[:, 1])

    @staticmethod
    def optimize_angles(rho: DensityMatrix, objective: Objective, budget: int = None) -> OptimizationResult:
        """
        Maximize an objective over magnet angles.

        Every pair of coarse directions is scored; the best REFINEMENT_SEEDS pairs seed
        Nelder-Mead runs of at most `budget` evaluations each. Among the refined
        candidates within TIE_TOLERANCE of the best value, the lexicographically
        smallest canonical (theta_a, phi_a, theta_b, phi_b) is reported.

        Args:
            rho: State to optimize for
            objective: kickoff, period_ddif or max_distance
            budget: Objective evaluations per refinement, at least 1

        Returns:
            OptimizationResult with the value re-evaluated at the reported config

        Raises:
            ValidationError: If budget < 1
        """
        budget = get_lab_setting('DEFAULT_OPT_BUDGET') if budget is None else budget
        if budget < 1:
            raise ValidationError(f"budget must be at least 1, got {budget}")
        objective = Objective(objective)
        mat = rho.mat

        points = get_lab_setting('ANGLE_GRID_POINTS')
        angles, vectors = AngleOptimizer.coarse_directions(points)
        count = angles.shape[0]
        index_a, index_b = np.divmod(np.arange(count * count), count)

        screen_times = None
        if objective is Objective.MAX_DISTANCE:
            screen_times = AngleOptimizer.half_period_grid(get_lab_setting('MAX_DISTANCE_SCREEN_STRIDE'))
        grid_values = AngleOptimizer.objective_values(mat, vectors[index_a], vectors[index_b],
                                                      objective, screen_times)
        evaluations = int(grid_values.size)

        # ties up to roundoff keep grid order
        seeds = np.argsort(-np.round(grid_values, 12), kind='stable')[:get_lab_setting('REFINEMENT_SEEDS')]
        fraction = get_lab_setting('NM_INITIAL_STEP')
        steps = fraction * np.array([math.pi / points, 2 * math.pi / points] * 2)

        def negative(x):
            vec_a = _unit_vectors(x[0], x[1])[None, :]
            vec_b = _unit_vectors(x[2], x[3])[None, :]
            return -float(AngleOptimizer.objective_values(mat, vec_a, vec_b, objective)[0])

        candidates: List[Tuple[float, MagnetConfig]] = []
        for seed in seeds:
            x0 = np.concatenate([angles[index_a[seed]], angles[index_b[seed]]])
            simplex = np.vstack([x0, x0 + np.diag(steps)])
            result = minimize(negative, x0, method='Nelder-Mead', options={
                'maxfev': budget,
                'xatol': get_lab_setting('NM_SIMPLEX_DIAMETER'),
                'fatol': np.inf,
                'initial_simplex': simplex,
            })
            evaluations += int(result.nfev)
            config = MagnetConfig.from_angles(*result.x)
            candidates.append((AngleOptimizer.evaluate_objective(rho, config, objective), config))
            evaluations += 1

        best_value = max(value for value, _ in candidates)
        tolerance = get_lab_setting('TIE_TOLERANCE')
        value, config = min(
            ((v, c) for v, c in candidates if v >= best_value - tolerance),
            key=lambda item: item[1].angles(),
        )

        logger.debug(f"Optimized {objective.value}: value={value:.12g} angles={config.angles()} "
                     f"evaluations={evaluations}")
        return OptimizationResult(config=config, value=value, evaluations=evaluations)


__all__ = ['AngleOptimizer']
