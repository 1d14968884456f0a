# Output helpers for the response calculators

from .export import (DIAGNOSTIC_FIELDS, SCAN_FIELDS, VERIFY_FIELDS, OutputFormat, render_dicts,
                     render_model, render_records, render_report, write_output)

__all__ = [
    'OutputFormat',
    'DIAGNOSTIC_FIELDS',
    'SCAN_FIELDS',
    'VERIFY_FIELDS',
    'render_records',
    'render_model',
    'render_dicts',
    'render_report',
    'write_output',
]
