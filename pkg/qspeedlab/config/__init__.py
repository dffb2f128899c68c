"""
Configuration package for the evolution lab.

This package contains the numerical defaults and logging setup (settings) and
the tolerance, schema and exit-code constants (rules).
"""

from .settings import LAB_SETTINGS, configure_logging, get_lab_setting

__all__ = ['LAB_SETTINGS', 'configure_logging', 'get_lab_setting']
