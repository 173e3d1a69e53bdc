import io

import numpy as np

from utils.helpers import format_value, open_output, write_csv, write_summary


def test_format_value():
    assert format_value(np.pi) == '3.14159265'
    assert format_value(np.float64(1e-12)) == '1e-12'
    assert format_value(3) == '3'
    assert format_value(np.int64(7)) == '7'
    assert format_value(True) == 'True'
    assert format_value(np.bool_(False)) == 'False'
    assert format_value(0.5 - 0.25j) == '0.5-0.25i'
    assert format_value(np.array([1.0, 2.5])) == '1 2.5'
    assert format_value('x') == 'x'


def test_write_csv_with_summary():
    stream = io.StringIO()
    rows = [{'p': 0.0, 'value': 1 / 3, 'extra': 'ignored'}, {'p': 0.5, 'value': 2.0}]
    write_csv(stream, ['p', 'value'], rows, {'best': 2.0, 'converged': True})
    assert stream.getvalue().splitlines() == [
        'p,value',
        '0,0.333333333',
        '0.5,2',
        '# best=2',
        '# converged=True',
    ]


def test_write_summary_only():
    stream = io.StringIO()
    write_summary(stream, {'state': np.array([1, 0j])})
    assert stream.getvalue() == '# state=1+0i 0+0i\n'


def test_open_output(tmp_path, capsys):
    target = tmp_path / 'table.csv'
    with open_output(str(target)) as out:
        out.write('a\n')
    assert target.read_text() == 'a\n'
    with open_output('-') as out:
        out.write('b\n')
    assert capsys.readouterr().out == 'b\n'
