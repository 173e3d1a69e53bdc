import numpy as np
import pytest

import cli as cli_module
from cli import EXIT_INVALID, EXIT_NOT_CONVERGED, EXIT_OK, QInfoCLI
from config.config import Config
from qinfo.optimize import OptimizationReport
from qinfo.qstate import PureStateVector, format_density_matrix


@pytest.fixture
def cli(monkeypatch):
    for name in ('QINFO_THREADS', 'QINFO_LOG_LEVEL', 'QINFO_DEFAULTS'):
        monkeypatch.delenv(name, raising=False)
    return QInfoCLI(Config())


def run(cli, tmp_path, *argv):
    out = tmp_path / 'out.csv'
    code = cli.run([*argv, '--out', str(out)])
    if not out.exists():
        return code, [], [], {}
    lines = out.read_text().splitlines()
    summary = dict(line[2:].split('=', 1) for line in lines if line.startswith('# '))
    table = [line.split(',') for line in lines if not line.startswith('#')]
    header, rows = (table[0], table[1:]) if table else ([], [])
    return code, header, [dict(zip(header, r)) for r in rows], summary


def test_two_qubit_capacity(cli, tmp_path):
    code, header, rows, summary = run(cli, tmp_path, 'capacity', 'two-qubit',
                                      '--mu1', '1', '--mu2', '1', '--mu3', '0', '--sweep-p', '11')
    assert code == EXIT_OK
    assert header == ['p', 'f_p', 'gamma_E']
    assert len(rows) == 11
    assert float(rows[0]['gamma_E']) == pytest.approx(0.0, abs=1e-12)
    assert float(summary['p0']) == pytest.approx(0.0832217, abs=1e-4)
    assert float(summary['gamma_max']) == pytest.approx(3.8246, abs=2e-3)


def test_example_two(cli, tmp_path):
    code, header, rows, summary = run(cli, tmp_path, 'discord', 'examples', '--which', '2')
    assert code == EXIT_OK
    assert float(rows[0]['D_formula']) == pytest.approx(0.625)
    assert len(summary['G_eigenvalues'].split()) == 8


def test_example_sweep(cli, tmp_path):
    code, _, rows, _ = run(cli, tmp_path, 'discord', 'examples', '--which', '3', '--steps', '5')
    assert code == EXIT_OK
    assert len(rows) == 5
    assert all(float(r['D_formula']) >= float(r['D_lower_bound']) - 1e-9 for r in rows)


def test_werner_table(cli, tmp_path):
    code, _, rows, summary = run(cli, tmp_path, 'discord', 'werner', '--m', '3', '--steps', '5')
    assert code == EXIT_OK
    assert summary['m'] == '3'
    for r in rows:
        assert float(r['D_formula']) == pytest.approx(float(r['D_closed']), abs=1e-8)


def test_field_sweep(cli, tmp_path):
    code, header, rows, summary = run(cli, tmp_path, 'xx', 'sweep-field', '--temp', '1.5',
                                      '--b1-max', '1', '--steps', '3')
    assert code == EXIT_OK
    assert header == ['B1', 'QD', 'CC', 'EN']
    for r in rows:
        assert float(r['QD']) == pytest.approx(float(r['CC']), abs=1e-6)
    assert float(summary['T']) == 1.5


def test_monogamy_sweep(cli, tmp_path):
    code, header, rows, summary = run(cli, tmp_path, 'xx', 'monogamy', '--temp', '1.5',
                                      '--b1-max', '1', '--steps', '3')
    assert code == EXIT_OK
    assert header == cli_module.MONOGAMY_COLUMNS
    assert float(summary['max_identity_residual']) < 1e-8


def test_dimer_table(cli, tmp_path):
    code, header, rows, _ = run(cli, tmp_path, 'hubbard', 'dimer', '--alpha-max', '3', '--steps', '3')
    assert code == EXIT_OK
    assert header == ['alpha', 'E_g', 'E_s', 'E_vn', 'E_unequal']
    assert float(rows[0]['E_g']) == pytest.approx(np.sqrt(5) - 1, abs=1e-8)
    assert float(rows[0]['E_s']) == pytest.approx(np.sqrt(60) - 6, abs=1e-8)


def test_dimer_interaction_axis(cli, tmp_path):
    code, header, rows, _ = run(cli, tmp_path, 'hubbard', 'dimer', '--u-over-t',
                                '--alpha-min', '0', '--alpha-max', '4', '--steps', '2')
    assert code == EXIT_OK
    assert header[0] == 'U_over_t'
    assert float(rows[0]['alpha']) == pytest.approx(1.0)


def test_trimer_table_flags_negative_values(cli, tmp_path):
    code, header, rows, _ = run(cli, tmp_path, 'hubbard', 'trimer', '--beta-max', '1', '--steps', '2')
    assert code == EXIT_OK
    assert header == ['beta', 'E_six', 'E_site3', 'E_bi', 'E_vn', 'negative']
    for r in rows:
        lowest = min(float(r['E_six']), float(r['E_site3']), float(r['E_bi']))
        assert r['negative'] == str(lowest < -1e-9)


def test_partition_search_flags_negative_values(cli, tmp_path, monkeypatch):
    def fake_search(sector, partition, restarts, seed, workers):
        amps = np.zeros(16)
        amps[3] = 1
        return OptimizationReport(best_value=-0.25, best_state=PureStateVector((2,) * 4, amps), restarts=2,
                                  values=[-0.25, -0.5], seed=seed, iterations=[4, 6], converged=True)

    monkeypatch.setattr(cli_module, 'maximize_partition_entanglement', fake_search)
    code, header, rows, summary = run(cli, tmp_path, 'hubbard', 'maximize', '--modes', '4', '--particles', '2',
                                      '--partition', '0,1;2,3', '--restarts', '2')
    assert code == EXIT_OK
    assert header == ['restart', 'value', 'iterations', 'negative']
    assert [r['negative'] for r in rows] == ['True', 'True']
    assert summary['negative'] == 'True'


def test_partition_search_output(cli, tmp_path):
    code, header, rows, summary = run(cli, tmp_path, 'hubbard', 'maximize', '--modes', '4', '--particles', '2',
                                      '--partition', '0,1;2,3', '--restarts', '2', '--seed', '1')
    assert code == EXIT_OK
    assert header[-1] == 'negative'
    assert summary['negative'] == 'False'
    assert float(summary['E_max']) > 0


def test_geometric_from_file(cli, tmp_path, bell_rho):
    state = tmp_path / 'bell.txt'
    state.write_text(format_density_matrix(bell_rho))
    code, _, rows, summary = run(cli, tmp_path, 'discord', 'geometric', '--state-file', str(state))
    assert code == EXIT_OK
    assert float(rows[0]['D_formula']) == pytest.approx(0.5)
    assert rows[0]['D_bruteforce'] == ''
    assert summary['dims'] == '2x2'
    assert summary['zero_discord'] == 'False'


def test_geometric_with_search(cli, tmp_path, bell_rho):
    state = tmp_path / 'bell.txt'
    state.write_text(format_density_matrix(bell_rho))
    code, _, rows, _ = run(cli, tmp_path, 'discord', 'geometric', '--state-file', str(state), '--bruteforce')
    assert code == EXIT_OK
    assert float(rows[0]['D_bruteforce']) == pytest.approx(0.5, abs=1e-6)


@pytest.mark.parametrize("argv", [
    ['hubbard', 'maximize', '--modes', '4', '--particles', '2', '--partition', '0,1;1,2'],
    ['discord', 'geometric', '--state-file', 'does-not-exist.txt'],
    ['capacity'],
    ['capacity', 'two-qubit', '--mu1', '0.5', '--mu2', '1', '--mu3', '0'],
    ['xx', 'sweep-field', '--temp', '-1'],
    ['hubbard', 'dimer', '--steps', '0'],
    ['capacity', 'qutrit'],
])
def test_invalid_input_exit_code(cli, tmp_path, argv):
    code, _, _, _ = run(cli, tmp_path, *argv)
    assert code == EXIT_INVALID


def test_malformed_state_file(cli, tmp_path):
    state = tmp_path / 'bad.txt'
    state.write_text('dims 2 2\n1 0\n')
    code, _, _, _ = run(cli, tmp_path, 'discord', 'geometric', '--state-file', str(state))
    assert code == EXIT_INVALID


def test_not_converged_exit_code(cli, tmp_path, monkeypatch):
    def fake_search(sector, partition, restarts, seed, workers):
        amps = np.zeros(16)
        amps[3] = 1
        return OptimizationReport(best_value=0.0, best_state=PureStateVector((2,) * 4, amps), restarts=1,
                                  values=[0.0], seed=seed, iterations=[0], converged=False)

    monkeypatch.setattr(cli_module, 'maximize_partition_entanglement', fake_search)
    code, _, _, summary = run(cli, tmp_path, 'hubbard', 'maximize', '--modes', '4', '--particles', '2',
                              '--partition', '0;1;2;3', '--restarts', '1')
    assert code == EXIT_NOT_CONVERGED
    assert summary['converged'] == 'False'


def test_search_output_is_deterministic(cli, tmp_path):
    argv = ['hubbard', 'maximize', '--modes', '4', '--particles', '2', '--partition', '0,1;2,3',
            '--restarts', '3', '--seed', '5']
    outputs = []
    for threads in ('1', '2'):
        out = tmp_path / f'out{threads}.csv'
        assert cli.run([*argv, '--threads', threads, '--out', str(out)]) == EXIT_OK
        outputs.append(out.read_text())
    assert outputs[0] == outputs[1]
    assert '# E_max=' in outputs[0]


def test_help_exits_cleanly(cli, capsys):
    assert cli.run(['--help']) == EXIT_OK
    assert 'capacity' in capsys.readouterr().out
