from .cache import ResultCache, cache_key
from .report_writer import render, rows_frame, write_report

__all__ = [
    'ResultCache',
    'cache_key',
    'render',
    'rows_frame',
    'write_report',
]
