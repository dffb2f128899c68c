"""
Survey Service Module

This module runs the Monte Carlo campaign over random separable states: every
record is derived from its (seed, index) key by sampling a separable state,
optimizing the magnet angles for the period objective, and measuring distances
and information content. Shards only change scheduling, never results.
"""

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from ..config.rules import TOLERANCES
from ..config.settings import get_lab_setting
from ..models import Objective, SurveyConfig, SurveyRecord, SurveySummary
from .angle_optimizer import AngleOptimizer
from .csv_service import CSVService
from .dynamics_service import DynamicsService
from .error_handler import LabError, PersistenceError, SurveyError, ValidationError
from .quantify_service import QuantifyService
from .state_service import StateService

logger = logging.getLogger(__name__)

SUMMARY_AXES = ('mutual_info', 'entropy_ab')
_INT_FIELDS = ('seed', 'index', 'num_terms')


def _run_shard(shard: int, indices: Sequence[int], seed: int, opt_budget: int,
               max_terms: int) -> List[SurveyRecord]:
    """Compute one shard's records in index order; runs in worker processes."""
    records = []
    for index in indices:
        try:
            records.append(SurveyService.regenerate_record(seed, int(index), opt_budget, max_terms))
        except SurveyError as e:
            raise SurveyError(e.message, shard=shard, details=e.details) from e
        except LabError as e:
            raise SurveyError(f"Record {index} failed: {e.message}", shard=shard,
                              details={'index': int(index)}) from e
    return records


class SurveyService:
    """
    Service class for separable-state surveys.
    Records are immutable and fully determined by (seed, index, opt_budget, max_terms).
    """

    @staticmethod
    def regenerate_record(seed: int, index: int, opt_budget: int = None,
                          max_terms: int = None) -> SurveyRecord:
        """
        Recompute a single survey record from its key.

        Raises:
            SurveyError: If an optimized value or measure is non-finite
        """
        opt_budget = get_lab_setting('DEFAULT_OPT_BUDGET') if opt_budget is None else opt_budget
        sample = StateService.sample_separable(seed, index, max_terms)
        state = sample.state

        result = AngleOptimizer.optimize_angles(state, Objective.PERIOD_DDIF, opt_budget)
        unitaries = DynamicsService.propagators_over_time(result.config, np.array([math.pi / 4, math.pi / 2]))
        d_quarter, d_half = (float(v) for v in DynamicsService.evolved_distances(state, unitaries))
        report = QuantifyService.measure_report(state)

        values = {
            'mutual_info': report.mutual_info,
            'entropy_ab': report.entropy_ab,
            'entropy_a': report.entropy_a,
            'entropy_b': report.entropy_b,
            'd_quarter': d_quarter,
            'd_half': d_half,
            'd_dif': d_quarter - d_half,
        }
        bad = [name for name, value in values.items() if not math.isfinite(value)]
        if bad or not math.isfinite(result.value):
            raise SurveyError(f"Non-finite survey values for (seed={seed}, index={index}): {bad}",
                              details={'seed': seed, 'index': index})

        if d_quarter > TOLERANCES['SEPARABLE_CEILING']:
            logger.warning(f"Separable state (seed={seed}, index={index}) reached "
                           f"D(pi/4) = {d_quarter:.12g} above 1/2")

        theta_a, phi_a, theta_b, phi_b = result.config.angles()
        return SurveyRecord(seed=seed, index=index, num_terms=sample.num_terms,
                            theta_a=theta_a, phi_a=phi_a, theta_b=theta_b, phi_b=phi_b, **values)

    @staticmethod
    def shard_indices(samples: int, shards: int) -> List[np.ndarray]:
        """Contiguous index blocks, one per shard, in shard order."""
        return np.array_split(np.arange(samples, dtype=np.int64), shards)

    @staticmethod
    def iter_shards(config: SurveyConfig) -> Iterator[Tuple[int, List[SurveyRecord]]]:
        """
        Yield (shard, records) in shard order.

        Shards run in a process pool when config.workers > 1, else in-process.
        """
        blocks = SurveyService.shard_indices(config.samples, config.shards)
        arguments = [(shard, block.tolist(), config.seed, config.opt_budget, config.max_terms)
                     for shard, block in enumerate(blocks)]

        if config.workers > 1 and len(arguments) > 1:
            with ProcessPoolExecutor(max_workers=min(config.workers, len(arguments))) as pool:
                futures = [pool.submit(_run_shard, *args) for args in arguments]
                for shard, future in enumerate(futures):
                    yield shard, future.result()
        else:
            for args in arguments:
                yield args[0], _run_shard(*args)

    @staticmethod
    def run_survey(config: SurveyConfig, out_path: Optional[Union[str, os.PathLike]] = None) -> List[SurveyRecord]:
        """
        Run a survey campaign.

        Args:
            config: Validated survey configuration
            out_path: Optional CSV sink; the header is written first and each
                completed shard is appended in shard order

        Returns:
            Exactly config.samples records ordered by index

        Raises:
            SurveyError: If a shard fails (carries the shard index)
            PersistenceError: If the sink cannot be created
        """
        logger.info(f"Survey started: samples={config.samples} seed={config.seed} "
                    f"shards={config.shards} workers={config.workers} budget={config.opt_budget}")
        if out_path is not None:
            CSVService.write_frame(CSVService.to_frame([], 'survey'), out_path)

        records: List[SurveyRecord] = []
        with tqdm(total=config.samples, desc='survey', unit='state',
                  disable=not get_lab_setting('SHOW_PROGRESS')) as progress:
            for shard, shard_records in SurveyService.iter_shards(config):
                if out_path is not None:
                    try:
                        SurveyService.write_records(shard_records, out_path, header=False, append=True)
                    except PersistenceError as e:
                        raise SurveyError(f"Shard {shard} could not be persisted: {e.message}",
                                          shard=shard) from e
                records.extend(shard_records)
                progress.update(len(shard_records))
                logger.debug(f"Shard {shard} done with {len(shard_records)} records")

        logger.info(f"Survey finished: {len(records)} records, "
                    f"max d_quarter {max(r.d_quarter for r in records):.12g}")
        return records

    @staticmethod
    def summarize(records: Sequence[SurveyRecord], axis: str = 'mutual_info') -> SurveySummary:
        """
        Summary statistics over (x, d_dif) pairs.

        Args:
            records: Non-empty record list
            axis: x axis, 'mutual_info' or 'entropy_ab'

        Returns:
            SurveySummary; medians of even counts take the lower-middle value,
            standard deviations are population deviations

        Raises:
            ValidationError: If records is empty or the axis is unknown
        """
        if axis not in SUMMARY_AXES:
            raise ValidationError(f"Unknown summary axis '{axis}'. Use one of: {', '.join(SUMMARY_AXES)}")
        if not records:
            raise ValidationError("Cannot summarize an empty record list")

        x = np.array([getattr(r, axis) for r in records], dtype=np.float64)
        y = np.array([r.d_dif for r in records], dtype=np.float64)

        def lower_median(values):
            return float(np.sort(values)[(values.size - 1) // 2])

        return SurveySummary(
            count=len(records),
            mean_x=float(np.mean(x)), median_x=lower_median(x), std_x=float(np.std(x)),
            mean_y=float(np.mean(y)), median_y=lower_median(y), std_y=float(np.std(y)),
            max_d_quarter=float(max(r.d_quarter for r in records)),
        )

    @staticmethod
    def write_records(records: Iterable[SurveyRecord], target, header: bool = True,
                      append: bool = False) -> None:
        frame = CSVService.to_frame((r.model_dump() for r in records), 'survey')
        CSVService.write_frame(frame, target, header=header, append=append)

    @staticmethod
    def read_records(path: Union[str, os.PathLike]) -> List[SurveyRecord]:
        """
        Load records from a survey CSV.

        Raises:
            PersistenceError: If the file cannot be read
            ValidationError: If the header or a row is malformed
        """
        frame = CSVService.read_frame(path, 'survey')
        records = []
        for row in frame.to_dict('records'):
            try:
                records.append(SurveyRecord(**{
                    key: int(value) if key in _INT_FIELDS else float(value) for key, value in row.items()
                }))
            except (TypeError, ValueError) as e:
                raise ValidationError(f"Malformed survey row in {path}: {e}") from e
        return records


__all__ = ['SurveyService', 'SUMMARY_AXES']
