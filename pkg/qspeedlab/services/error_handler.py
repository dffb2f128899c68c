"""
Error Handler Service Module

This module provides centralized error handling for the lab, consolidating the
custom exception hierarchy, error tracking, and the mapping from failures to
command-line exit codes.
"""

import time
import logging
import traceback
from typing import Dict, Any, Optional
from contextlib import contextmanager

from ..config.rules import EXIT_CODES

logger = logging.getLogger(__name__)


# ============================================================================
# CUSTOM EXCEPTIONS
# ============================================================================

class LabError(Exception):
    """Base exception for all lab errors."""

    def __init__(self, message: str, error_code: str = None, details: Dict[str, Any] = None):
        """
        Initialize base lab error.

        Args:
            message: Human-readable error message
            error_code: Internal error code for tracking
            details: Additional error details for debugging
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code or 'UNKNOWN_ERROR'
        self.details = details or {}
        self.timestamp = time.time()


class ValidationError(LabError):
    """Exception raised when an input is out of its documented range."""

    def __init__(self, message: str, error_code: str = 'VALIDATION_FAILED', details: Dict[str, Any] = None):
        super().__init__(message, error_code, details)


class LinalgError(LabError):
    """Exception raised when a matrix violates a kernel precondition or a solver fails."""

    def __init__(self, message: str, error_code: str = 'LINALG_ERROR', details: Dict[str, Any] = None):
        super().__init__(message, error_code, details)


class PreconditionError(LabError):
    """Exception raised when a physical precondition (e.g. an angle constraint) fails."""

    def __init__(self, message: str, error_code: str = 'PRECONDITION_FAILED', details: Dict[str, Any] = None):
        super().__init__(message, error_code, details)


class SurveyError(LabError):
    """Exception raised when a survey shard fails."""

    def __init__(self, message: str, shard: Optional[int] = None,
                 error_code: str = 'SURVEY_FAILED', details: Dict[str, Any] = None):
        details = dict(details or {})
        details['shard'] = shard
        super().__init__(message, error_code, details)
        self.shard = shard


class PersistenceError(LabError):
    """Exception raised when reading or writing result files fails."""

    def __init__(self, message: str, error_code: str = 'IO_ERROR', details: Dict[str, Any] = None):
        super().__init__(message, error_code, details)


# ============================================================================
# ERROR HANDLER CLASS
# ============================================================================

class ErrorHandler:
    """
    Centralized error handling service that tracks failures and translates
    them into exit codes for the command line.
    """

    def __init__(self):
        """Initialize the error handler."""
        self.error_counts = {}  # Track error frequencies

    def log_error(self, error: Exception, context: Dict[str, Any] = None) -> str:
        """
        Log error with context and return tracking ID.

        Args:
            error: The exception that occurred
            context: Additional context information

        Returns:
            String tracking ID for the error
        """
        tracking_id = f"ERR_{int(time.time())}_{id(error) % 10000}"

        error_context = {
            'tracking_id': tracking_id,
            'error_type': type(error).__name__,
            'error_message': str(error),
            'context': context or {},
            'traceback': traceback.format_exc(),
        }

        error_type = type(error).__name__
        self.error_counts[error_type] = self.error_counts.get(error_type, 0) + 1

        logger.error(f"Error tracked [{tracking_id}]: {error_type} - {str(error)}",
                     extra={'error_context': error_context})

        return tracking_id

    def get_error_statistics(self) -> Dict[str, Any]:
        """Get error statistics."""
        return {
            'error_counts': self.error_counts.copy(),
            'total_errors': sum(self.error_counts.values()),
        }

    @staticmethod
    def exit_code_for(error: Exception) -> int:
        """
        Map an exception to the command-line exit code.

        Args:
            error: The exception to classify

        Returns:
            2 for usage/validation problems, 3 for I/O problems, 1 otherwise
        """
        if isinstance(error, (PersistenceError, OSError)):
            return EXIT_CODES['IO']
        if isinstance(error, SurveyError) and isinstance(error.__cause__, (PersistenceError, OSError)):
            return EXIT_CODES['IO']
        if isinstance(error, (ValidationError, PreconditionError)):
            return EXIT_CODES['USAGE']
        return EXIT_CODES['FAILURE']

    @contextmanager
    def error_context(self, operation: str, **context):
        """
        Context manager for wrapping operations with error handling.

        Args:
            operation: Name of the operation being performed
            **context: Additional context information
        """
        operation_context = {'operation': operation, **context}

        try:
            logger.debug(f"Starting operation: {operation}")
            yield
            logger.debug(f"Completed operation: {operation}")

        except Exception as e:
            tracking_id = self.log_error(e, operation_context)

            if isinstance(e, LabError):
                e.details['tracking_id'] = tracking_id
                raise
            if isinstance(e, OSError):
                raise PersistenceError(
                    f"{operation}: {e}",
                    details={'tracking_id': tracking_id, 'original_error': str(e)},
                ) from e
            raise LabError(
                f"{operation} failed: {e}",
                'OPERATION_FAILED',
                {'tracking_id': tracking_id, 'original_error': str(e)},
            ) from e


# ============================================================================
# GLOBAL ERROR HANDLER INSTANCE
# ============================================================================

error_handler = ErrorHandler()

__all__ = [
    'ErrorHandler',
    'error_handler',
    'LabError',
    'ValidationError',
    'LinalgError',
    'PreconditionError',
    'SurveyError',
    'PersistenceError',
]
