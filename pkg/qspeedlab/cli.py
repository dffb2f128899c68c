"""
Command Router Module

Builds the argparse parser from the command handlers and dispatches one
invocation. Results go to stdout, logs and error messages to stderr.

Exit codes: 0 success, 1 unexpected failure, 2 usage or validation error,
3 file I/O error.
"""

import argparse
import logging
import sys
from typing import List, Optional, TextIO

from . import __version__
from .commands import COMMANDS
from .config.rules import EXIT_CODES
from .config.settings import configure_logging
from .models import CommandSpec
from .services.error_handler import ErrorHandler, LabError, error_handler

logger = logging.getLogger(__name__)

_INTERNAL_KEYS = ('handler', 'command', 'verbose')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='qspeed',
        description='Evolution speed of two-spin mixed states in local magnetic fields',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--verbose', '-v', action='store_true', help='Debug logging on stderr')
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        subparser = subparsers.add_parser(command.name, help=command.help, description=command.help)
        command.add_arguments(subparser)
        subparser.set_defaults(handler=command)
    return parser


def format_error_statistics(handler: ErrorHandler) -> str:
    """One-line summary of the errors a handler has tracked, for --verbose runs."""
    stats = handler.get_error_statistics()
    counts = ', '.join(f"{name}={count}" for name, count in sorted(stats['error_counts'].items()))
    return f"errors tracked: {stats['total_errors']} ({counts})"


def main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])
        stdout: Stream for results (default: sys.stdout)

    Returns:
        Process exit code
    """
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_CODES['USAGE'] if e.code else EXIT_CODES['SUCCESS']

    configure_logging('DEBUG' if args.verbose else None)
    flags = {k: v for k, v in vars(args).items() if k not in _INTERNAL_KEYS}
    spec = CommandSpec(command=args.command, flags=flags, out_path=flags.get('out'))

    try:
        with error_handler.error_context(spec.command, **spec.flags):
            return args.handler.handle(args, stdout)
    except LabError as e:
        print(f"qspeed {spec.command}: {e.message}", file=sys.stderr)
        if args.verbose:
            print(f"qspeed {spec.command}: {format_error_statistics(error_handler)}", file=sys.stderr)
        return ErrorHandler.exit_code_for(e)


__all__ = ['build_parser', 'format_error_statistics', 'main']
