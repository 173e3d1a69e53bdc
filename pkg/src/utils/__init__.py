from .helpers import format_value, open_output, write_csv, write_summary

__all__ = [
    'format_value',
    'open_output',
    'write_csv',
    'write_summary',
]
