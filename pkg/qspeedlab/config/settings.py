"""
Lab Settings Configuration

Contains numerical defaults for the evolution laboratory (time grids, optimizer
parameters, survey sizing) and the logging configuration. Every key can be
overridden with a QSPEED_<KEY> environment variable or an entry in .env.
"""

import os
import logging.config
from typing import Dict, Any

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Lab operational settings
LAB_SETTINGS: Dict[str, Any] = {
    # Time grids (radians of precession, hbar = 1, unit field)
    'DEFAULT_TIME_POINTS': 721,
    'T_PERP_RESOLUTION': 720,

    # Angle optimization
    'ANGLE_GRID_POINTS': 12,
    'REFINEMENT_SEEDS': 5,
    'NM_SIMPLEX_DIAMETER': 1e-9,
    # Initial simplex edge as a fraction of the coarse grid spacing
    'NM_INITIAL_STEP': 0.5,
    'TIE_TOLERANCE': 1e-6,
    'DEFAULT_OPT_BUDGET': 200,
    # Screening grid for max_distance seeds is the default grid decimated by this factor
    'MAX_DISTANCE_SCREEN_STRIDE': 6,

    # Separable sampler
    'SAMPLER_MAX_TERMS': 8,
    'SAMPLER_ALGORITHM': 'PCG64',

    # Survey
    'DEFAULT_SURVEY_SEED': 42,
    'DEFAULT_SHARDS': 1,
    'DEFAULT_WORKERS': 1,
    'SHOW_PROGRESS': os.getenv('QSPEED_SHOW_PROGRESS', 'false').lower() == 'true',

    # Output
    'CSV_SIGNIFICANT_DIGITS': 12,

    # Logging settings
    'LOG_LEVEL': os.getenv('LOG_LEVEL', 'INFO'),
}

# Logging configuration; stdout carries CSV and values, so handlers write to stderr
LOGGING: Dict[str, Any] = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'qspeedlab': {
            'handlers': ['console'],
            'level': LAB_SETTINGS['LOG_LEVEL'],
            'propagate': False,
        },
    },
}


def get_lab_setting(key: str, default: Any = None) -> Any:
    """
    Get a lab setting with optional environment variable override.

    Args:
        key: Setting key to retrieve
        default: Default value if key not found

    Returns:
        Setting value or default
    """
    env_value = os.getenv(f"QSPEED_{key.upper()}")
    base = LAB_SETTINGS.get(key, default)

    if env_value is not None:
        # Coerce to the type of the built-in default
        try:
            if isinstance(base, bool):
                return env_value.lower() == 'true'
            if isinstance(base, int):
                return int(env_value)
            if isinstance(base, float):
                return float(env_value)
        except ValueError:
            pass
        return env_value

    return base


def update_settings_for_environment(env: str = None):
    """
    Update settings based on environment.

    Args:
        env: Environment name ('development', 'production', 'testing')
    """
    env = env or os.getenv('ENVIRONMENT', 'production')

    if env == 'development':
        LAB_SETTINGS.update({
            'LOG_LEVEL': 'DEBUG',
            'SHOW_PROGRESS': True,
        })
    elif env == 'testing':
        LAB_SETTINGS.update({
            'LOG_LEVEL': 'ERROR',
            'SHOW_PROGRESS': False,
        })
    LOGGING['loggers']['qspeedlab']['level'] = LAB_SETTINGS['LOG_LEVEL']


def configure_logging(level: str = None) -> None:
    """
    Apply the LOGGING dictConfig, optionally forcing a level.

    Args:
        level: Level name overriding LOG_LEVEL (e.g. from --verbose)
    """
    if level:
        LOGGING['loggers']['qspeedlab']['level'] = level.upper()
    logging.config.dictConfig(LOGGING)


# Initialize settings based on current environment
update_settings_for_environment()
