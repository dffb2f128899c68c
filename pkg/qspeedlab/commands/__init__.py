"""
Commands Package

Contains focused command handlers that parse flags, validate them and
delegate all computation to services.
"""

from .base import BaseCommand
from .compute import ComputeCommand, OptimizeCommand
from .figures import FigDistanceCommand, FigKickoffCommand, FigProductMixtureCommand, FigZAxisCommand
from .survey import SurveyCommand, SurveySummaryCommand

COMMANDS = [
    FigKickoffCommand(),
    FigDistanceCommand(),
    FigProductMixtureCommand(),
    FigZAxisCommand(),
    SurveyCommand(),
    SurveySummaryCommand(),
    ComputeCommand(),
    OptimizeCommand(),
]

__all__ = [
    'BaseCommand', 'COMMANDS', 'ComputeCommand', 'OptimizeCommand', 'FigDistanceCommand',
    'FigKickoffCommand', 'FigProductMixtureCommand', 'FigZAxisCommand', 'SurveyCommand',
    'SurveySummaryCommand',
]
