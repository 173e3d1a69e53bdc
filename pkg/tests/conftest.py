from pathlib import Path

import numpy as np
import pytest
import yaml

from qinfo.qstate import PartitionSpec, PureStateVector, from_pure

ANCHOR_FILE = Path(__file__).parent / 'data' / 'anchors.yaml'


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def two_qubits():
    return PartitionSpec.qudits((2, 2))


@pytest.fixture
def bell():
    return PureStateVector((2, 2), np.array([1, 0, 0, 1]) / np.sqrt(2))


@pytest.fixture
def bell_rho(bell):
    return from_pure(bell)


@pytest.fixture
def ghz():
    amps = np.zeros(8, dtype=complex)
    amps[0] = amps[7] = 1 / np.sqrt(2)
    return PureStateVector((2, 2, 2), amps)


def _basis_state(dims, index):
    amps = np.zeros(int(np.prod(dims)), dtype=complex)
    amps[index] = 1
    return PureStateVector(tuple(dims), amps)


@pytest.fixture
def basis_state():
    return _basis_state


@pytest.fixture
def anchor():
    """
    Compare values with the ones frozen under `key` in tests/data/anchors.yaml.
    A missing key is recorded from the current values and the test is skipped.
    """
    def check(key: str, values: dict, abs_tol: float = 1e-8):
        stored = yaml.safe_load(ANCHOR_FILE.read_text()) if ANCHOR_FILE.exists() else None
        stored = stored or {}
        if key not in stored:
            stored[key] = {name: float(v) for name, v in values.items()}
            ANCHOR_FILE.parent.mkdir(exist_ok=True)
            ANCHOR_FILE.write_text(yaml.safe_dump(stored, sort_keys=True))
            pytest.skip(f"recorded anchor '{key}' in {ANCHOR_FILE.name}")
        for name, value in values.items():
            assert value == pytest.approx(stored[key][name], abs=abs_tol), f"{key}.{name}"
    return check
