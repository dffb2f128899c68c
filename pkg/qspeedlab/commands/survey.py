"""
Survey Commands

Run a separable-state survey into CSV and summarize survey files.
"""

import logging
from typing import TextIO

from ..config.rules import SUMMARY_FIELDS
from ..config.settings import get_lab_setting
from ..models import SurveySummary
from ..services import SurveyService, ValidationService
from .base import BaseCommand, format_value

logger = logging.getLogger(__name__)

AXIS_FLAGS = {'mutual-info': 'mutual_info', 'entropy': 'entropy_ab'}


def summary_line(summary: SurveySummary) -> str:
    """One line of `name=value` pairs in SUMMARY_FIELDS order."""
    data = summary.model_dump()
    parts = [f"{name}={data[name]}" if name == 'count' else f"{name}={format_value(data[name])}"
             for name in SUMMARY_FIELDS]
    return ', '.join(parts)


class SurveyCommand(BaseCommand):
    """Monte Carlo campaign over random separable states."""

    name = 'survey'
    help = 'Sample separable states, optimize D_dif and record distances and entropies'

    def add_arguments(self, parser):
        parser.add_argument('--samples', type=int, default=1000)
        parser.add_argument('--seed', type=int, default=None, help='Campaign seed (default: 42)')
        parser.add_argument('--shards', type=int, default=None)
        parser.add_argument('--workers', type=int, default=None, help='Worker processes for shards')
        parser.add_argument('--opt-budget', type=int, default=None)
        parser.add_argument('--max-terms', type=int, default=None)
        parser.add_argument('--out', required=True, help='Survey CSV path')

    def handle(self, args, stdout: TextIO) -> int:
        config = ValidationService.validate_survey_config({
            'samples': args.samples,
            'seed': get_lab_setting('DEFAULT_SURVEY_SEED') if args.seed is None else args.seed,
            'shards': get_lab_setting('DEFAULT_SHARDS') if args.shards is None else args.shards,
            'workers': get_lab_setting('DEFAULT_WORKERS') if args.workers is None else args.workers,
            'opt_budget': get_lab_setting('DEFAULT_OPT_BUDGET') if args.opt_budget is None else args.opt_budget,
            'max_terms': get_lab_setting('SAMPLER_MAX_TERMS') if args.max_terms is None else args.max_terms,
        })
        records = SurveyService.run_survey(config, args.out)
        print(summary_line(SurveyService.summarize(records)), file=stdout)
        return 0


class SurveySummaryCommand(BaseCommand):
    """Summary statistics of an existing survey CSV."""

    name = 'survey-summary'
    help = 'Summarize a survey CSV against mutual information or entropy'

    def add_arguments(self, parser):
        parser.add_argument('--in', dest='in_path', required=True, help='Survey CSV path')
        parser.add_argument('--axis', choices=list(AXIS_FLAGS), default='mutual-info')

    def handle(self, args, stdout: TextIO) -> int:
        records = SurveyService.read_records(args.in_path)
        summary = SurveyService.summarize(records, AXIS_FLAGS[args.axis])
        print(summary_line(summary), file=stdout)
        return 0
