"""
CSV Service Module

Reads and writes the lab's result tables with pandas. Every file uses a fixed
header from CSV_SCHEMAS, 12 significant digits for floats, '\\n' row endings,
UTF-8, and an empty field for missing values.
"""

import logging
import os
from typing import Iterable, List, Mapping, Optional, TextIO, Union

import pandas as pd

from ..config.rules import CSV_SCHEMAS, RESPONSE_MESSAGES
from ..config.settings import get_lab_setting
from .error_handler import PersistenceError, ValidationError

logger = logging.getLogger(__name__)

PathOrBuffer = Union[str, os.PathLike, TextIO]


class CSVService:
    """Service class for schema-checked CSV persistence."""

    @staticmethod
    def schema(name: str) -> List[str]:
        if name not in CSV_SCHEMAS:
            raise ValidationError(f"Unknown CSV schema '{name}'")
        return list(CSV_SCHEMAS[name])

    @staticmethod
    def to_frame(rows: Iterable[Mapping], schema: str) -> pd.DataFrame:
        """Build a DataFrame with exactly the schema's columns, in order."""
        columns = CSVService.schema(schema)
        return pd.DataFrame([{column: row.get(column) for column in columns} for row in rows],
                            columns=columns)

    @staticmethod
    def write_frame(frame: pd.DataFrame, target: PathOrBuffer, header: bool = True,
                    append: bool = False) -> None:
        """
        Write a frame with the lab's number format.

        Args:
            frame: Table to write
            target: Path or open text stream (e.g. sys.stdout)
            header: Whether to emit the header row
            append: Append to an existing file instead of truncating

        Raises:
            PersistenceError: If the target cannot be written
        """
        digits = get_lab_setting('CSV_SIGNIFICANT_DIGITS')
        options = dict(index=False, header=header, float_format=f'%.{digits}g',
                       lineterminator='\n', na_rep='')
        if isinstance(target, (str, os.PathLike)):
            options.update(mode='a' if append else 'w', encoding='utf-8')
        try:
            frame.to_csv(target, **options)
        except OSError as e:
            raise PersistenceError(f"{RESPONSE_MESSAGES['UNWRITABLE_PATH']} {target}: {e}",
                                   details={'path': str(target)}) from e
        logger.debug(f"Wrote {len(frame)} rows to {target}")

    @staticmethod
    def write_rows(rows: Iterable[Mapping], schema: str, target: PathOrBuffer) -> None:
        CSVService.write_frame(CSVService.to_frame(rows, schema), target)

    @staticmethod
    def read_frame(path: Union[str, os.PathLike], schema: Optional[str] = None) -> pd.DataFrame:
        """
        Read a CSV written by this service.

        Raises:
            PersistenceError: If the file is missing or unreadable
            ValidationError: If the header differs from the schema
        """
        try:
            frame = pd.read_csv(path, encoding='utf-8', float_precision='round_trip')
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise PersistenceError(f"Cannot read CSV from {path}: {e}", details={'path': str(path)}) from e
        if schema is not None and list(frame.columns) != CSVService.schema(schema):
            raise ValidationError(f"{path} does not have the '{schema}' header",
                                  details={'columns': list(frame.columns)})
        return frame


__all__ = ['CSVService']
