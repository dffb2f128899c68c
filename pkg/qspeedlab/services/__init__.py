"""
Services package for the evolution lab.

This package contains service modules that provide the numerical kernels,
state constructors, dynamics, measures, optimization and survey logic used
by the command layer.
"""

from .error_handler import ErrorHandler, error_handler
from .state_service import StateService
from .dynamics_service import DynamicsService
from .quantify_service import QuantifyService
from .angle_optimizer import AngleOptimizer
from .csv_service import CSVService
from .survey_service import SurveyService
from .validation_service import ValidationService

__all__ = [
    'ErrorHandler', 'error_handler', 'StateService', 'DynamicsService', 'QuantifyService',
    'AngleOptimizer', 'CSVService', 'SurveyService', 'ValidationService',
]
