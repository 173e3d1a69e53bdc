import sys
from contextlib import contextmanager
from typing import Iterable, Mapping, Optional, Sequence, TextIO

import numpy as np


def format_value(value) -> str:
    """
    Formats a CSV cell: floats with 9 significant digits, complex numbers
    as a+bi, everything else with str()
    """
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (complex, np.complexfloating)):
        re, im = float(np.real(value)), float(np.imag(value))
        sign = '-' if im < 0 else '+'
        return f"{re:.9g}{sign}{abs(im):.9g}i"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.9g}"
    if isinstance(value, (list, tuple, np.ndarray)):
        return ' '.join(format_value(v) for v in np.ravel(value))
    return str(value)


def write_csv(stream: TextIO, columns: Sequence[str], rows: Iterable[Mapping],
              summary: Optional[Mapping] = None):
    """
    Writes a header row, one line per row dict and an optional block of
    '# key=value' summary comments
    """
    stream.write(','.join(columns) + '\n')
    for row in rows:
        stream.write(','.join(format_value(row[c]) for c in columns) + '\n')
    if summary:
        write_summary(stream, summary)


def write_summary(stream: TextIO, summary: Mapping):
    for key, value in summary.items():
        stream.write(f"# {key}={format_value(value)}\n")


@contextmanager
def open_output(path: Optional[str]):
    """Yields the file at `path` for writing, or standard output"""
    if path is None or path == '-':
        yield sys.stdout
        sys.stdout.flush()
        return
    with open(path, 'w', encoding='utf-8', newline='') as f:
        yield f
