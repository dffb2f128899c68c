"""
Validation Service Module

This module provides centralized validation of command-line input: state
selectors, magnet configurations, parameter lists and survey settings. Every
check runs before any computation starts and raises ValidationError with a
message fit for the terminal.
"""

import logging
import math
from typing import Any, Dict, List, NamedTuple, Optional, Sequence

from pydantic import ValidationError as PydanticValidationError

from ..config.rules import CONFIG_SHORTHANDS, FAMILY_RANGES, RESPONSE_MESSAGES
from ..models import DensityMatrix, MagnetConfig, PureState, SurveyConfig
from .error_handler import ValidationError
from .state_service import StateService

logger = logging.getLogger(__name__)


class StateSelection(NamedTuple):
    """A validated state with its pure form and pure_phi amplitude when known."""
    rho: DensityMatrix
    pure: Optional[PureState]
    alpha: Optional[float]
    label: str


class ValidationService:
    """
    Service class for validating command flags.
    """

    MIN_X_STEPS = 2
    MIN_TIME_POINTS = 2

    @staticmethod
    def validate_finite(name: str, value: float) -> float:
        if value is None or not math.isfinite(value):
            raise ValidationError(f"--{name} must be a finite number, got {value}", 'INVALID_NUMBER')
        return float(value)

    @staticmethod
    def validate_state(family: Optional[str] = None, x: Optional[float] = None,
                       bell: Optional[str] = None, alpha: Optional[float] = None,
                       gamma: Optional[float] = None) -> StateSelection:
        """
        Resolve exactly one state selector into a validated state.

        Args:
            family: Family name, used together with x
            x: Family parameter
            bell: Bell state name
            alpha: pure_phi amplitude
            gamma: pure_ent angle

        Returns:
            StateSelection

        Raises:
            ValidationError: If zero or several selectors are given or a value is out of range
        """
        chosen = [name for name, value in (('family', family), ('bell', bell),
                                           ('alpha', alpha), ('gamma', gamma)) if value is not None]
        if not chosen:
            raise ValidationError(RESPONSE_MESSAGES['MISSING_STATE'], 'MISSING_STATE')
        if len(chosen) > 1:
            raise ValidationError(f"Give one state selector only, got: {', '.join('--' + c for c in chosen)}",
                                  'AMBIGUOUS_STATE')
        if x is not None and family is None:
            raise ValidationError("--x needs --family", 'MISSING_FAMILY')

        if family is not None:
            if family not in FAMILY_RANGES:
                raise ValidationError(f"{RESPONSE_MESSAGES['UNKNOWN_FAMILY']} '{family}'. "
                                      f"Use one of: {', '.join(FAMILY_RANGES)}", 'UNKNOWN_FAMILY')
            if x is None:
                raise ValidationError(f"--family {family} needs --x", 'MISSING_PARAMETER')
            spec = StateService.family_spec(family, ValidationService.validate_finite('x', x))
            if family == 'pure_phi':
                return ValidationService.validate_state(alpha=spec.param)
            if family == 'pure_ent':
                return ValidationService.validate_state(gamma=spec.param)
            return StateSelection(StateService.build_family(spec), None, None, f"{family}(x={x})")

        if bell is not None:
            pure = StateService.bell_state(bell)
            return StateSelection(pure.density(), pure, None, bell)

        if alpha is not None:
            spec = StateService.family_spec('pure_phi', ValidationService.validate_finite('alpha', alpha))
            pure = StateService.pure_family_state(spec)
            return StateSelection(pure.density(), pure, spec.param, f"pure_phi(alpha={alpha})")

        spec = StateService.family_spec('pure_ent', ValidationService.validate_finite('gamma', gamma))
        pure = StateService.pure_family_state(spec)
        return StateSelection(pure.density(), pure, None, f"pure_ent(gamma={gamma})")

    @staticmethod
    def validate_config(shorthand: Optional[str] = None, theta_a: Optional[float] = None,
                        phi_a: Optional[float] = None, theta_b: Optional[float] = None,
                        phi_b: Optional[float] = None, default: str = 'xx') -> MagnetConfig:
        """
        Resolve a named configuration or four explicit angles in radians.

        Raises:
            ValidationError: If the shorthand is unknown, angles are incomplete or both forms are mixed
        """
        angles = {'theta-a': theta_a, 'phi-a': phi_a, 'theta-b': theta_b, 'phi-b': phi_b}
        given = {k: v for k, v in angles.items() if v is not None}

        if given:
            if shorthand is not None:
                raise ValidationError("Use either --config or explicit angles, not both", 'AMBIGUOUS_CONFIG')
            missing = [k for k in angles if k not in given]
            if missing:
                raise ValidationError(f"Explicit angles need all four flags; missing: "
                                      f"{', '.join('--' + m for m in missing)}", 'INCOMPLETE_ANGLES')
            values = [ValidationService.validate_finite(k, v) for k, v in angles.items()]
            return MagnetConfig.from_angles(*values)

        name = default if shorthand is None else shorthand
        if name not in CONFIG_SHORTHANDS:
            raise ValidationError(f"Unknown config '{name}'. Use one of: {', '.join(CONFIG_SHORTHANDS)}",
                                  'UNKNOWN_CONFIG')
        return MagnetConfig.from_angles(*CONFIG_SHORTHANDS[name])

    @staticmethod
    def validate_x_steps(x_steps: int) -> int:
        if x_steps is None or x_steps < ValidationService.MIN_X_STEPS:
            raise ValidationError(f"--x-steps must be at least {ValidationService.MIN_X_STEPS}, got {x_steps}")
        return x_steps

    @staticmethod
    def validate_parameter_list(family: str, values: Sequence[float], flag: str = 'x') -> List[float]:
        """
        Validate a non-empty list of family parameters.

        Raises:
            ValidationError: If the list is empty or a value is out of the family range
        """
        if not values:
            raise ValidationError(f"--{flag} needs at least one value", 'EMPTY_LIST')
        return [StateService.family_spec(family, ValidationService.validate_finite(flag, v)).param
                for v in values]

    @staticmethod
    def validate_time_axis(t_max: float, points: int) -> None:
        ValidationService.validate_finite('t-max', t_max)
        if t_max <= 0.0:
            raise ValidationError(f"--t-max must be positive, got {t_max}")
        if points < ValidationService.MIN_TIME_POINTS:
            raise ValidationError(f"--points must be at least {ValidationService.MIN_TIME_POINTS}, got {points}")

    @staticmethod
    def validate_survey_config(params: Dict[str, Any]) -> SurveyConfig:
        """
        Build a SurveyConfig from flag values.

        Raises:
            ValidationError: If any field is out of range
        """
        try:
            return SurveyConfig(**{k: v for k, v in params.items() if v is not None})
        except PydanticValidationError as e:
            problems = '; '.join(f"--{'-'.join(map(str, err['loc'])).replace('_', '-')}: {err['msg']}"
                                 for err in e.errors())
            raise ValidationError(f"Invalid survey settings: {problems}", 'INVALID_SURVEY') from e


__all__ = ['ValidationService', 'StateSelection']
