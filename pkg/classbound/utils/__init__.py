"""Utility modules for classbound."""

from .report_exporter import ReportExporter, emit_report

__all__ = ["ReportExporter", "emit_report"]
