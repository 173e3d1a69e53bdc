import numpy as np
import pytest

from qinfo.errors import ParameterRangeError, PartitionError
from qinfo.measures import (
    binary_entropy,
    concurrence,
    correlation_norm,
    eof_from_concurrence,
    geometric_entanglement,
    sep_norm,
    three_tangle,
)
from qinfo.qstate import (
    PartitionSpec,
    PureStateVector,
    apply_local_unitary,
    from_pure,
    haar_unitary,
    product_state,
    random_pure_state,
)


def test_sep_norm():
    assert sep_norm((2, 2)) == pytest.approx(1.0)
    assert sep_norm((2, 2, 2, 2)) == pytest.approx(1.0)
    assert sep_norm((3, 3)) == pytest.approx(3.0)
    assert sep_norm((2, 8)) == pytest.approx(np.sqrt(28))
    assert sep_norm(PartitionSpec.modes([(0, 1), (2, 3)], 4)) == pytest.approx(6.0)
    with pytest.raises(PartitionError):
        sep_norm((4,))


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3), (2, 2, 2)])
def test_product_states_have_zero_entanglement(dims, rng):
    vectors = [rng.standard_normal(d) + 1j * rng.standard_normal(d) for d in dims]
    psi = product_state(vectors)
    assert geometric_entanglement(psi, PartitionSpec.qudits(dims)) == pytest.approx(0.0, abs=1e-10)


def test_bell_and_ghz(bell, ghz):
    assert geometric_entanglement(bell, PartitionSpec.qudits((2, 2))) == pytest.approx(np.sqrt(3) - 1)
    assert correlation_norm(ghz, PartitionSpec.qudits((2, 2, 2))) == pytest.approx(2.0)
    assert geometric_entanglement(ghz, PartitionSpec.qudits((2, 2, 2))) == pytest.approx(1.0)


def test_entanglement_is_local_unitary_invariant(rng):
    parts = PartitionSpec.qudits((3, 3))
    psi = random_pure_state((3, 3), rng)
    moved = apply_local_unitary(psi, parts, 0, haar_unitary(3, rng))
    assert geometric_entanglement(moved, parts) == pytest.approx(geometric_entanglement(psi, parts))


def test_concurrence(bell_rho, basis_state):
    assert concurrence(bell_rho) == pytest.approx(1.0)
    assert concurrence(from_pure(basis_state((2, 2), 2))) == pytest.approx(0.0, abs=1e-12)
    assert concurrence(np.eye(4) / 4) == pytest.approx(0.0, abs=1e-12)


def test_concurrence_of_pure_state(rng):
    psi = random_pure_state((2, 2), rng)
    a = psi.amplitudes
    expected = 2 * abs(a[0] * a[3] - a[1] * a[2])
    assert concurrence(from_pure(psi)) == pytest.approx(expected, abs=1e-8)


def test_eof():
    assert eof_from_concurrence(0.0) == pytest.approx(0.0)
    assert eof_from_concurrence(1.0) == pytest.approx(1.0)
    assert eof_from_concurrence(0.5) == pytest.approx(binary_entropy((1 + np.sqrt(0.75)) / 2))
    assert eof_from_concurrence(0.5) == pytest.approx(0.3546, abs=1e-4)
    with pytest.raises(ParameterRangeError):
        eof_from_concurrence(1.5)


def test_binary_entropy():
    assert binary_entropy(0.5) == pytest.approx(1.0)
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0


def test_three_tangle(ghz):
    assert three_tangle(ghz) == pytest.approx(1.0)
    w = np.zeros(8, dtype=complex)
    w[[1, 2, 4]] = 1 / np.sqrt(3)
    assert three_tangle(PureStateVector((2, 2, 2), w)) == pytest.approx(0.0, abs=1e-12)
