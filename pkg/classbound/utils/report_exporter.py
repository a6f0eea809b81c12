"""
Report Exporter Module

This module writes a CampaignReport to JSON or CSV and reads JSON reports
back. JSON output has sorted keys and no timestamps, so equal seeds give
byte-identical files.
"""

import json
import logging
import os
from typing import Optional

import pandas as pd
from tqdm import tqdm

from classbound.harness.campaign import CampaignReport

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["lemma", "instance", "lhs", "rhs", "holds", "slack", "mode"]
FORMATS = ("json", "csv")


def _check_path(path: str) -> None:
    if not isinstance(path, str) or not path:
        raise ValueError("path must be a non-empty string")
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)


class ReportExporter:
    """A utility class for exporting CampaignReport objects to files."""

    @staticmethod
    def to_json(report: CampaignReport, indent: int = 2) -> str:
        if report is None:
            raise ValueError("Report cannot be None")
        return json.dumps(report.model_dump(mode="json"), indent=indent, sort_keys=True, ensure_ascii=False)

    @staticmethod
    def save_to_json(report: CampaignReport, path: str, indent: int = 2) -> None:
        """
        Save the report as a single JSON document.

        Args:
            report: The report to export
            path: Output file path.
            indent: Number of spaces for indentation (default: 2).

        Raises:
            ValueError: If report is None or invalid parameters
            IOError: If file writing fails
        """
        if not isinstance(indent, int) or indent < 0:
            raise ValueError("indent must be a non-negative integer")
        text = ReportExporter.to_json(report, indent)
        _check_path(path)
        try:
            with open(path, "w", encoding="utf-8") as f:
                f.write(text + "\n")
        except IOError as e:
            logger.error(f"Error writing to file {path}: {e}")
            raise
        logger.info(f"Saved {len(report.records)} records to {path}")

    @staticmethod
    def to_frame(report: CampaignReport, progress: bool = False) -> pd.DataFrame:
        """One row per record with the columns lemma, instance, lhs, rhs, holds, slack, mode."""
        if report is None:
            raise ValueError("Report cannot be None")
        rows = [
            {column: getattr(record, column) for column in CSV_COLUMNS}
            for record in tqdm(report.records, desc="records", disable=not progress)
        ]
        return pd.DataFrame(rows, columns=CSV_COLUMNS)

    @staticmethod
    def save_to_csv(report: CampaignReport, path: str) -> None:
        """
        Save the records of the report as CSV.

        Raises:
            ValueError: If report is None or invalid parameters
            IOError: If file writing fails
        """
        frame = ReportExporter.to_frame(report)
        _check_path(path)
        try:
            frame.to_csv(path, index=False)
        except IOError as e:
            logger.error(f"Error writing to file {path}: {e}")
            raise
        logger.info(f"Saved {len(frame)} rows to {path}")

    @staticmethod
    def save(report: CampaignReport, path: str, fmt: Optional[str] = None) -> None:
        """Save as ``fmt``, or by the file extension when ``fmt`` is None."""
        fmt = fmt or os.path.splitext(path)[1].lstrip(".").lower() or "json"
        if fmt not in FORMATS:
            raise ValueError(f"Unknown format {fmt!r}; expected one of {FORMATS}")
        if fmt == "json":
            ReportExporter.save_to_json(report, path)
        else:
            ReportExporter.save_to_csv(report, path)

    @staticmethod
    def load_json(path: str) -> CampaignReport:
        """Read a report written by :meth:`save_to_json`."""
        try:
            with open(path, "r", encoding="utf-8") as f:
                return CampaignReport.model_validate_json(f.read())
        except IOError as e:
            logger.error(f"Error reading file {path}: {e}")
            raise


def emit_report(report: CampaignReport, fmt: str, path: str) -> str:
    """Write ``report`` to ``path`` as ``json`` or ``csv`` and return the path."""
    if fmt not in FORMATS:
        error_msg = f"Unknown format {fmt!r}; expected one of {FORMATS}"
        logger.error(error_msg)
        raise ValueError(error_msg)
    ReportExporter.save(report, path, fmt)
    return path
