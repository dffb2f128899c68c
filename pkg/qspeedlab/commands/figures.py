"""
Figure Commands

Regenerate the data behind each figure as CSV: kickoff coefficients across a
family, trace-distance series, the product-mixture period/distance trade-off,
and the z-axis comparison of the mixed families.
"""

import argparse
import logging
import math
from typing import Dict, Iterable, List, TextIO

import numpy as np

from ..config.rules import FAMILY_RANGES, MIXED_FAMILIES, RESPONSE_MESSAGES
from ..config.settings import get_lab_setting
from ..models import DensityMatrix, MagnetConfig, Objective
from ..services import (
    AngleOptimizer, CSVService, DynamicsService, StateService, ValidationService,
)
from ..services.error_handler import ValidationError
from .base import BaseCommand

logger = logging.getLogger(__name__)


def _series_rows(family: str, x: float, rho: DensityMatrix, config: MagnetConfig,
                 grid: np.ndarray) -> Iterable[Dict]:
    series = DynamicsService.distance_series(rho, config, grid)
    theta_a, phi_a, theta_b, phi_b = config.angles()
    for t, distance in zip(series.times, series.values):
        yield {'family': family, 'x': x, 'theta_a': theta_a, 'phi_a': phi_a,
               'theta_b': theta_b, 'phi_b': phi_b, 't': float(t), 'distance': float(distance)}


def _add_time_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--t-max', type=float, default=math.pi, help='End of the time grid (default: pi)')
    parser.add_argument('--points', type=int, default=None, help='Grid points (default: 721)')


def _time_grid(args: argparse.Namespace) -> np.ndarray:
    points = get_lab_setting('DEFAULT_TIME_POINTS') if args.points is None else args.points
    ValidationService.validate_time_axis(args.t_max, points)
    return DynamicsService.default_time_grid(args.t_max, points)


class FigKickoffCommand(BaseCommand):
    """Kickoff coefficient and energy moments across a family's parameter range."""

    name = 'fig-kickoff'
    help = 'Decay coefficient tau^2 as a function of mixing'

    def add_arguments(self, parser):
        parser.add_argument('--family', required=True, help='State family')
        parser.add_argument('--x-steps', type=int, default=11, help='Uniform parameter samples (>= 2)')
        self.add_config_arguments(parser)
        self.add_out_argument(parser)

    def handle(self, args, stdout: TextIO) -> int:
        if args.family not in FAMILY_RANGES:
            raise ValidationError(f"{RESPONSE_MESSAGES['UNKNOWN_FAMILY']} '{args.family}'. "
                                  f"Use one of: {', '.join(FAMILY_RANGES)}", 'UNKNOWN_FAMILY')
        steps = ValidationService.validate_x_steps(args.x_steps)
        config = self.config_from(args)
        low, high = FAMILY_RANGES[args.family]

        rows = []
        for x in np.linspace(low, high, steps):
            rho = StateService.build_family(StateService.family_spec(args.family, float(x)))
            kickoff = DynamicsService.kickoff(rho, config)
            moments = DynamicsService.energy_moments(rho, config)
            rows.append({'family': args.family, 'x': float(x), 'tau_sq': kickoff.tau_sq,
                         'rate': kickoff.rate, 'delta_e_mean': moments.mean,
                         'delta_e_var': moments.variance})

        CSVService.write_rows(rows, 'fig_kickoff', self.target(args, stdout))
        logger.info(f"fig-kickoff: {len(rows)} rows for {args.family}")
        return 0


class FigDistanceCommand(BaseCommand):
    """Trace distance D(rho0, rho(t)) over a time grid for a list of family parameters."""

    name = 'fig-distance'
    help = 'Trace distance series for a family'

    def add_arguments(self, parser):
        parser.add_argument('--family', required=True, help='State family')
        parser.add_argument('--x', type=float, nargs='+', required=True, help='Family parameters')
        self.add_config_arguments(parser)
        _add_time_arguments(parser)
        self.add_out_argument(parser)

    def handle(self, args, stdout: TextIO) -> int:
        if args.family not in FAMILY_RANGES:
            raise ValidationError(f"{RESPONSE_MESSAGES['UNKNOWN_FAMILY']} '{args.family}'. "
                                  f"Use one of: {', '.join(FAMILY_RANGES)}", 'UNKNOWN_FAMILY')
        values = ValidationService.validate_parameter_list(args.family, args.x)
        config = self.config_from(args)
        grid = _time_grid(args)

        rows: List[Dict] = []
        for x in values:
            rho = StateService.build_family(StateService.family_spec(args.family, x))
            rows.extend(_series_rows(args.family, x, rho, config, grid))

        CSVService.write_rows(rows, 'fig_distance', self.target(args, stdout))
        return 0


class FigProductMixtureCommand(BaseCommand):
    """Product mixture a|11><11| + (1-a)|00><00| under (x, x) or distance-optimized fields."""

    name = 'fig-product-mixture'
    help = 'Trace distance of the product mixture (period or distance mode)'

    def add_arguments(self, parser):
        parser.add_argument('--mode', choices=['period', 'distance'], default='period')
        parser.add_argument('--a', type=float, nargs='+', default=[0.0, 0.125, 0.25, 0.5],
                            help='Mixing weights in [0, 1]')
        parser.add_argument('--budget', type=int, default=None,
                            help='Evaluations per refinement in distance mode')
        _add_time_arguments(parser)
        self.add_out_argument(parser)

    def handle(self, args, stdout: TextIO) -> int:
        weights = ValidationService.validate_parameter_list('product_mixture', args.a, flag='a')
        grid = _time_grid(args)
        if args.budget is not None and args.budget < 1:
            raise ValidationError(f"--budget must be at least 1, got {args.budget}")

        rows: List[Dict] = []
        for a in weights:
            rho = StateService.build_family(StateService.family_spec('product_mixture', a))
            if args.mode == 'period':
                config = ValidationService.validate_config('xx')
            else:
                config = AngleOptimizer.optimize_angles(rho, Objective.MAX_DISTANCE, args.budget).config
                logger.info(f"a={a}: distance-optimal angles {config.angles()}")
            rows.extend({'a': a, **row} for row in _series_rows('product_mixture', a, rho, config, grid))

        CSVService.write_rows(rows, 'fig_product_mixture', self.target(args, stdout))
        return 0


class FigZAxisCommand(BaseCommand):
    """Mixed families and the product mixture under opposite z fields."""

    name = 'fig-zaxis'
    help = 'Trace distance of all families with fields (z, -z)'

    def add_arguments(self, parser):
        parser.add_argument('--x', type=float, nargs='+', default=[1 / 3, 0.5, 0.75, 1.0],
                            help='Family parameters in [0, 1]')
        _add_time_arguments(parser)
        self.add_out_argument(parser)

    def handle(self, args, stdout: TextIO) -> int:
        config = ValidationService.validate_config('z-z')
        grid = _time_grid(args)
        families = MIXED_FAMILIES + ('product_mixture',)
        values = {family: ValidationService.validate_parameter_list(family, args.x) for family in families}

        rows: List[Dict] = []
        for family in families:
            for x in values[family]:
                rho = StateService.build_family(StateService.family_spec(family, x))
                rows.extend(_series_rows(family, x, rho, config, grid))

        CSVService.write_rows(rows, 'fig_distance', self.target(args, stdout))
        return 0
