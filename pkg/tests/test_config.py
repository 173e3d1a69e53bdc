import logging

import pytest

from config.config import Config, ConfigError


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ('QINFO_THREADS', 'QINFO_LOG_LEVEL', 'QINFO_DEFAULTS'):
        monkeypatch.delenv(name, raising=False)


def test_packaged_defaults():
    config = Config()
    assert config.threads == 1
    assert config.log_level == 'INFO'
    assert config.optimizer.seed == 0
    assert config.optimizer.restarts_for('two_qutrit') == 50
    assert config.optimizer.restarts_for('bruteforce') == 200
    assert config.tolerances.rank == pytest.approx(1e-9)


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv('QINFO_THREADS', '4')
    monkeypatch.setenv('QINFO_LOG_LEVEL', 'debug')
    config = Config()
    assert config.threads == 4
    assert config.log_level == 'DEBUG'


@pytest.mark.parametrize("name, value", [
    ('QINFO_THREADS', 'many'),
    ('QINFO_THREADS', '0'),
    ('QINFO_LOG_LEVEL', 'chatty'),
])
def test_invalid_environment(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError):
        Config()


def test_alternative_defaults_file(monkeypatch, tmp_path, caplog):
    path = tmp_path / 'defaults.yaml'
    path.write_text(
        'workers: 3\n'
        'optimizer:\n'
        '  seed: 7\n'
        '  restarts:\n'
        '    fermion: 5\n'
        '  colour: blue\n'
    )
    monkeypatch.setenv('QINFO_DEFAULTS', str(path))
    with caplog.at_level(logging.WARNING):
        config = Config()
    assert config.threads == 3
    assert config.optimizer.seed == 7
    assert config.optimizer.restarts_for('fermion') == 5
    assert config.optimizer.restarts_for('two_qubit') == 20
    assert "colour" in caplog.text


def test_explicit_path_wins(monkeypatch, tmp_path):
    path = tmp_path / 'mine.yaml'
    path.write_text('workers: 2\n')
    monkeypatch.setenv('QINFO_DEFAULTS', str(tmp_path / 'missing.yaml'))
    assert Config(str(path)).threads == 2


def test_empty_file_uses_builtins(tmp_path, caplog):
    path = tmp_path / 'empty.yaml'
    path.write_text('')
    with caplog.at_level(logging.WARNING):
        config = Config(str(path))
    assert config.optimizer.restarts_for('three_qubit') == 100
    assert "Empty defaults file" in caplog.text


@pytest.mark.parametrize("text", [
    'optimizer: [1, 2\n',
    '- just\n- a list\n',
    'optimizer:\n  seed: abc\n',
    'optimizer:\n  restarts: 5\n',
    'tolerances: 3\n',
])
def test_malformed_defaults(tmp_path, text):
    path = tmp_path / 'bad.yaml'
    path.write_text(text)
    with pytest.raises(ConfigError):
        Config(str(path))


def test_missing_defaults_file(tmp_path):
    with pytest.raises(ConfigError):
        Config(str(tmp_path / 'nowhere.yaml'))
