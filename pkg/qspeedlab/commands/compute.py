"""
Compute Commands

One-shot quantities for a single state and magnet configuration, and the
magnet-angle optimizer.
"""

import logging
from typing import TextIO

from ..config.rules import RESPONSE_MESSAGES
from ..models import Objective
from ..services import (
    AngleOptimizer, CSVService, DynamicsService, QuantifyService, ValidationService,
)
from ..services.error_handler import PreconditionError, ValidationError
from .base import BaseCommand, format_value

logger = logging.getLogger(__name__)

QUANTITIES = ('concurrence', 'entropy', 'mutual-info', 'kickoff', 't-perp',
              'distance', 'fidelity', 'd-dif')
OBJECTIVE_FLAGS = {
    'kickoff': Objective.KICKOFF,
    'period-ddif': Objective.PERIOD_DDIF,
    'max-distance': Objective.MAX_DISTANCE,
}


class ComputeCommand(BaseCommand):
    """Print one quantity with 12 significant digits."""

    name = 'compute'
    help = 'Compute a single quantity for one state'

    def add_arguments(self, parser):
        parser.add_argument('quantity', choices=QUANTITIES)
        self.add_state_arguments(parser)
        self.add_config_arguments(parser)
        parser.add_argument('--t', type=float, help='Time in radians (distance, fidelity)')

    def handle(self, args, stdout: TextIO) -> int:
        selection = self.state_from(args)
        config = self.config_from(args)
        quantity = args.quantity

        if quantity in ('distance', 'fidelity'):
            if args.t is None:
                raise ValidationError(RESPONSE_MESSAGES['NEEDS_TIME'].format(quantity=quantity), 'MISSING_TIME')
            ValidationService.validate_finite('t', args.t)
        if quantity == 't-perp' and selection.alpha is None:
            raise PreconditionError(RESPONSE_MESSAGES['T_PERP_MIXED'], 'T_PERP_NEEDS_ALPHA')

        rho = selection.rho
        if quantity == 'concurrence':
            value = QuantifyService.concurrence(rho)
        elif quantity == 'entropy':
            value = QuantifyService.entropy_vn(rho)
        elif quantity == 'mutual-info':
            value = QuantifyService.mutual_information(rho)
        elif quantity == 'kickoff':
            value = DynamicsService.kickoff(rho, config).rate
        elif quantity == 't-perp':
            value = DynamicsService.t_perp_pure(selection.alpha, config)
        elif quantity == 'distance':
            value = DynamicsService.trace_distance(rho, DynamicsService.evolve(rho, config, args.t))
        elif quantity == 'fidelity':
            value = DynamicsService.fidelity(rho, config, args.t)
        else:
            value = DynamicsService.d_dif(rho, config)

        logger.debug(f"compute {quantity} for {selection.label}: {value!r}")
        print(format_value(value), file=stdout)
        return 0


class OptimizeCommand(BaseCommand):
    """Optimal magnet angles for one state and objective, as a one-row CSV."""

    name = 'optimize'
    help = 'Optimize magnet angles for kickoff, period or distance'

    def add_arguments(self, parser):
        self.add_state_arguments(parser)
        parser.add_argument('--objective', choices=list(OBJECTIVE_FLAGS), default='kickoff')
        parser.add_argument('--budget', type=int, default=None, help='Evaluations per refinement')
        self.add_out_argument(parser)

    def handle(self, args, stdout: TextIO) -> int:
        selection = self.state_from(args)
        objective = OBJECTIVE_FLAGS[args.objective]
        result = AngleOptimizer.optimize_angles(selection.rho, objective, args.budget)
        theta_a, phi_a, theta_b, phi_b = result.config.angles()

        row = {'state': selection.label, 'objective': objective.value, 'theta_a': theta_a,
               'phi_a': phi_a, 'theta_b': theta_b, 'phi_b': phi_b, 'value': result.value,
               'evaluations': result.evaluations}
        CSVService.write_rows([row], 'optimize', self.target(args, stdout))
        return 0
