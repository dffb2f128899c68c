"""
Base Command

Shared argument groups and output handling for command handlers. Handlers
validate their flags, delegate to services and write results; they hold no
numerical logic of their own.
"""

import argparse
import logging
import sys
from typing import Optional, TextIO

from ..config.rules import CONFIG_SHORTHANDS
from ..models import MagnetConfig
from ..services.validation_service import StateSelection, ValidationService

logger = logging.getLogger(__name__)


def format_value(value: float) -> str:
    """Values printed to stdout use 12 significant digits."""
    return f"{value:.12g}"


class BaseCommand:
    """
    Base class for command handlers.

    Subclasses set `name` and `help`, declare flags in add_arguments and
    implement handle, which returns the exit code.
    """

    name = ''
    help = ''

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    def handle(self, args: argparse.Namespace, stdout: TextIO) -> int:
        raise NotImplementedError

    @staticmethod
    def add_state_arguments(parser: argparse.ArgumentParser) -> None:
        group = parser.add_argument_group('state')
        group.add_argument('--family', help='State family name (with --x)')
        group.add_argument('--x', type=float, help='Family parameter')
        group.add_argument('--bell', choices=['phi+', 'phi-', 'psi+', 'psi-'], help='Bell state')
        group.add_argument('--alpha', type=float, help='Amplitude of alpha|11> + beta|00>')
        group.add_argument('--gamma', type=float, help='Angle of cos(g)|10> - sin(g)|01>')

    @staticmethod
    def add_config_arguments(parser: argparse.ArgumentParser) -> None:
        group = parser.add_argument_group('magnet configuration (radians)')
        group.add_argument('--config', help=f"Named configuration: {', '.join(CONFIG_SHORTHANDS)}")
        group.add_argument('--theta-a', type=float)
        group.add_argument('--phi-a', type=float)
        group.add_argument('--theta-b', type=float)
        group.add_argument('--phi-b', type=float)

    @staticmethod
    def add_out_argument(parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--out', help='Output CSV path (default: standard output)')

    @staticmethod
    def state_from(args: argparse.Namespace) -> StateSelection:
        return ValidationService.validate_state(family=args.family, x=args.x, bell=args.bell,
                                                alpha=args.alpha, gamma=args.gamma)

    @staticmethod
    def config_from(args: argparse.Namespace, default: str = 'xx') -> MagnetConfig:
        return ValidationService.validate_config(args.config, args.theta_a, args.phi_a,
                                                 args.theta_b, args.phi_b, default=default)

    @staticmethod
    def target(args: argparse.Namespace, stdout: Optional[TextIO] = None):
        """Path given by --out, else the command's standard output."""
        out = getattr(args, 'out', None)
        return out if out else (stdout or sys.stdout)
