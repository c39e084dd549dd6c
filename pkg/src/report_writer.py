"""
Dataset writer module for qwlift.

This module writes per-site datasets as CSV or JSON and reads CSV datasets
back. Numbers are written with up to 17 significant digits so every double
survives a round trip.
"""

import csv
import json
import logging
import os
from typing import Dict, List, Mapping, Union

import numpy as np

from .line_walk import SiteDistribution
from .schemas import OutputFormat

logger = logging.getLogger(__name__)

Columns = Mapping[str, np.ndarray]


def format_number(value: Union[int, float, np.number]) -> str:
    """
    Format a number without locale and without loss.

    Args:
        value (Union[int, float, np.number]): Value to format

    Returns:
        str: Integers as digits, floats with 17 significant digits
    """
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _plain(value: Union[int, float, np.number]) -> Union[int, float]:
    if isinstance(value, (int, np.integer)):
        return int(value)
    return float(value)


def _to_columns(data: Union[SiteDistribution, Columns]) -> Dict[str, np.ndarray]:
    columns = data.columns() if isinstance(data, SiteDistribution) else dict(data)
    lengths = {len(values) for values in columns.values()}
    if len(lengths) > 1:
        raise ValueError(f"Columns have different lengths: {sorted(lengths)}")
    non_finite = [name for name, values in columns.items() if not np.all(np.isfinite(values))]
    if non_finite:
        raise ValueError(f"Columns have non-finite values: {', '.join(non_finite)}")
    return columns


class DatasetWriter:
    """
    Writer for per-site datasets.
    """

    def __init__(self, output_dir: str = "."):
        """
        Initialize the dataset writer.

        Args:
            output_dir (str): Directory to save datasets to
        """
        self.output_dir = output_dir
        os.makedirs(output_dir, exist_ok=True)

    def _path(self, filename: str) -> str:
        return os.path.join(self.output_dir, filename)

    def write_csv(self, data: Union[SiteDistribution, Columns], filename: str) -> str:
        """
        Write a dataset as CSV with a header row.

        Args:
            data (Union[SiteDistribution, Columns]): Distribution or named columns
            filename (str): File name inside the output directory

        Returns:
            str: Path to the written file
        """
        columns = _to_columns(data)
        filepath = self._path(filename)

        with open(filepath, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(list(columns))
            for row in zip(*columns.values()):
                writer.writerow([format_number(value) for value in row])

        logger.info(f"CSV dataset written: {filepath}")
        return filepath

    def write_json(self, data: Union[SiteDistribution, Columns], filename: str) -> str:
        """
        Write a dataset as a JSON array of objects, one per site.

        Args:
            data (Union[SiteDistribution, Columns]): Distribution or named columns
            filename (str): File name inside the output directory

        Returns:
            str: Path to the written file
        """
        columns = _to_columns(data)
        filepath = self._path(filename)

        # float repr is the shortest string that round-trips
        rows = [
            {name: _plain(value) for name, value in zip(columns, row)}
            for row in zip(*columns.values())
        ]

        with open(filepath, "w") as f:
            json.dump(rows, f, indent=2)

        logger.info(f"JSON dataset written: {filepath}")
        return filepath

    def write(
        self,
        data: Union[SiteDistribution, Columns],
        filename: str,
        fmt: OutputFormat = OutputFormat.CSV,
    ) -> str:
        """
        Write a dataset in the requested format.

        Args:
            data (Union[SiteDistribution, Columns]): Distribution or named columns
            filename (str): File name inside the output directory
            fmt (OutputFormat): csv or json

        Returns:
            str: Path to the written file
        """
        if fmt == OutputFormat.JSON:
            return self.write_json(data, filename)
        return self.write_csv(data, filename)


def read_csv(filepath: str) -> Dict[str, np.ndarray]:
    """
    Read a CSV dataset back into float columns.

    Args:
        filepath (str): Path to a file written by DatasetWriter

    Returns:
        Dict[str, np.ndarray]: Column name to values, in file order
    """
    with open(filepath, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        rows: List[List[float]] = [[float(cell) for cell in row] for row in reader]

    values = np.array(rows, dtype=float).reshape(len(rows), len(header))
    return {name: values[:, i] for i, name in enumerate(header)}


def read_json(filepath: str) -> Dict[str, np.ndarray]:
    """
    Read a JSON dataset back into float columns.

    Args:
        filepath (str): Path to a file written by DatasetWriter

    Returns:
        Dict[str, np.ndarray]: Column name to values, in file order
    """
    with open(filepath) as f:
        rows = json.load(f)
    if not rows:
        return {}
    return {name: np.array([row[name] for row in rows], dtype=float) for name in rows[0]}
