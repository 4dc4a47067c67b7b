"""File handling, reports and the command line."""

from .idealfile import IdealFile, IdealFileError, parse_ideal_file, read_ideal_file
from .main import main
from .report import csv_text, report_to_json, validate_report

__all__ = [
    "IdealFile", "IdealFileError", "parse_ideal_file", "read_ideal_file", "main", "csv_text",
    "report_to_json", "validate_report",
]
