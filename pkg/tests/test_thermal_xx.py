import numpy as np
import pytest

from qinfo.discord import werner_state
from qinfo.errors import InvalidDimensionError, ParameterRangeError, PositivityError
from qinfo.measures import concurrence
from qinfo.qstate import PartitionSpec, from_pure, mutual_information
from qinfo.thermal_xx import (
    XXParams,
    bell_diagonal_qd_cc,
    bell_diagonal_state,
    classical_correlation,
    critical_temperature,
    is_bell_diagonal,
    monogamy,
    qd_cc,
    sweep_field,
    sweep_monogamy,
    sweep_temperature,
    theorem_qd_eq_cc,
    thermal_concurrence,
    thermal_state,
    thermal_state_exact,
    xx_eigenvector,
    xx_hamiltonian,
    zero_concurrence_half_width,
)

TWO_QUBITS = PartitionSpec.qudits((2, 2))


def test_high_temperature_is_maximally_mixed():
    rho = thermal_state(XXParams(B1=0.7, B2=-0.2, T=1e6)).rho.data
    assert np.allclose(rho, np.eye(4) / 4, atol=1e-5)


def test_low_temperature_projects_on_ground_state():
    p = XXParams(B1=0.3, B2=-0.2, T=0.01)
    psi = xx_eigenvector(p, -1)
    assert np.allclose(xx_hamiltonian(p) @ psi, -p.D * psi)
    assert np.allclose(thermal_state(p).rho.data, np.outer(psi, psi), atol=1e-12)


@pytest.mark.parametrize("b1, b2, t", [
    (0.0, 0.0, 0.5),
    (1.0, 1.0, 1.5),
    (1.0, -1.0, 0.9),
    (0.3, 2.0, 0.2),
    (-4.0, 0.5, 3.0),
])
def test_thermal_state_matches_exponential(b1, b2, t):
    p = XXParams(B1=b1, B2=b2, T=t)
    assert np.allclose(thermal_state(p).rho.data, thermal_state_exact(p), atol=1e-12)


def test_eigenvectors():
    p = XXParams(B1=0.8, B2=0.1, T=1.0)
    h = xx_hamiltonian(p)
    for sign in (1, -1):
        vec = xx_eigenvector(p, sign)
        assert np.allclose(h @ vec, sign * p.D * vec)
    assert np.allclose(np.linalg.eigvalsh(h), sorted([-0.9, 0.9, p.D, -p.D]))


def test_parameter_checks():
    with pytest.raises(ParameterRangeError):
        XXParams(T=0.0)
    with pytest.raises(ParameterRangeError):
        XXParams(J=0.0)
    with pytest.raises(ParameterRangeError):
        zero_concurrence_half_width(0.0)
    with pytest.raises(ParameterRangeError):
        critical_temperature(0.5, J=0.0)


# concurrence


@pytest.mark.parametrize("b1, b2, t", [(0.0, 0.0, 0.5), (1.0, -1.0, 0.9), (0.4, 1.2, 0.3), (2.0, 2.0, 0.1)])
def test_concurrence_closed_form(b1, b2, t):
    p = XXParams(B1=b1, B2=b2, T=t)
    assert thermal_concurrence(p) == pytest.approx(concurrence(thermal_state(p).rho), abs=1e-10)


def test_critical_temperature():
    assert critical_temperature(0.0) == pytest.approx(1 / np.arcsinh(1.0), abs=1e-10)
    assert critical_temperature(0.0) == pytest.approx(1.13459, abs=1e-5)
    d = np.sqrt(2.0)
    assert critical_temperature(0.5) == pytest.approx(d / np.arcsinh(d), abs=1e-10)
    tc = critical_temperature(0.5)
    assert thermal_concurrence(XXParams(B1=0.5, B2=-0.5, T=0.99 * tc)) > 0
    assert thermal_concurrence(XXParams(B1=0.5, B2=-0.5, T=1.01 * tc)) == 0.0


def test_zero_concurrence_window():
    width = zero_concurrence_half_width(1.5)
    assert width == pytest.approx(1.10916, abs=1e-4)
    assert thermal_concurrence(XXParams(B1=width - 0.01, B2=-(width - 0.01), T=1.5)) == 0.0
    assert thermal_concurrence(XXParams(B1=width + 0.01, B2=-(width + 0.01), T=1.5)) > 0
    assert zero_concurrence_half_width(0.5) == 0.0


def test_ground_state_is_maximally_entangled():
    assert thermal_concurrence(XXParams(T=0.01)) == pytest.approx(1.0, abs=1e-9)


# discord and classical correlation


def test_bell_and_product(bell_rho, basis_state):
    bell = qd_cc(bell_rho)
    assert bell.QD == pytest.approx(1.0)
    assert bell.CC == pytest.approx(1.0)
    product = qd_cc(from_pure(basis_state((2, 2), 0)))
    assert product.QD == pytest.approx(0.0, abs=1e-10)
    assert product.CC == pytest.approx(0.0, abs=1e-10)


def test_bell_diagonal_detection(bell_rho):
    assert is_bell_diagonal(bell_rho)
    assert is_bell_diagonal(bell_diagonal_state((0.2, -0.4, 0.1)))
    assert not is_bell_diagonal(thermal_state(XXParams(B1=1.0, B2=-1.0, T=0.9)).rho)
    with pytest.raises(PositivityError):
        bell_diagonal_state((1.0, 1.0, 1.0))


@pytest.mark.parametrize("c", [(0.3, -0.6, 0.2), (0.5, 0.5, -0.25), (-0.1, 0.0, 0.7)])
def test_numerical_cc_matches_closed_form(c):
    numeric = classical_correlation(bell_diagonal_state(c))
    assert numeric == pytest.approx(bell_diagonal_qd_cc(c).CC, abs=1e-8)


@pytest.mark.parametrize("c", [(0.3, 0.3, -0.09), (0.5, 0.5, -0.25), (0.5, -0.25, 0.5), (-0.4, -0.16, -0.4)])
def test_theorem_cases_that_hold(c):
    check = theorem_qd_eq_cc(*c)
    assert check.holds
    assert check.verified
    assert check.QD == pytest.approx(check.CC, abs=1e-10)


def test_theorem_case_that_fails():
    check = theorem_qd_eq_cc(0.5, 0.4, -0.25)
    assert not check.holds
    assert not check.verified
    assert abs(check.QD - check.CC) > 1e-3


def test_zero_field_thermal_state_meets_theorem():
    t = 0.8
    rho = thermal_state(XXParams(T=t)).rho
    c = np.tanh(1 / (2 * t))
    assert is_bell_diagonal(rho)
    check = theorem_qd_eq_cc(-c, -c, -c * c, tol=1e-10)
    assert check.holds and check.verified
    corr = qd_cc(rho)
    assert corr.QD == pytest.approx(corr.CC, abs=1e-10)


@pytest.mark.parametrize("t", [0.2, 0.9, 1.5])
@pytest.mark.parametrize("b", [0.5, 1.0, 2.0])
def test_antiparallel_fields_give_equal_qd_and_cc(b, t):
    corr = qd_cc(thermal_state(XXParams(B1=b, B2=-b, T=t)).rho)
    assert corr.QD == pytest.approx(corr.CC, abs=1e-6)


@pytest.mark.parametrize("t", [0.2, 0.9, 1.5])
@pytest.mark.parametrize("b", [0.5, 1.0])
def test_parallel_fields_keep_qd_above_cc(b, t):
    corr = qd_cc(thermal_state(XXParams(B1=b, B2=b, T=t)).rho)
    assert corr.QD > corr.CC
    assert corr.I == pytest.approx(corr.QD + corr.CC)


def test_parallel_fields_split_qd_and_cc():
    corr = qd_cc(thermal_state(XXParams(B1=1.0, B2=1.0, T=1.5)).rho)
    assert corr.QD == pytest.approx(0.062, abs=2e-3)
    assert corr.CC == pytest.approx(0.0396, abs=2e-3)


@pytest.mark.parametrize("c", [
    (-0.6, -0.6, -0.36),
    (0.3, -0.2, 0.1),
    (0.5, 0.5, -0.5),
    (-0.1, 0.6, 0.4),
])
def test_bell_diagonal_closed_form_matches_measurement_search(c):
    rho = bell_diagonal_state(c)
    assert is_bell_diagonal(rho)
    closed = qd_cc(rho)
    cc = classical_correlation(rho)
    mi = mutual_information(rho, TWO_QUBITS)
    assert closed.CC == pytest.approx(cc, abs=1e-8)
    assert closed.I == pytest.approx(mi, abs=1e-8)
    assert closed.QD == pytest.approx(mi - cc, abs=1e-8)


def test_discord_needs_two_qubits():
    with pytest.raises(InvalidDimensionError):
        qd_cc(werner_state(3, 0.5))


# monogamy


def test_monogamy_identity_in_antiparallel_fields():
    report = monogamy(XXParams(B1=1.0, B2=-1.0, T=1.5))
    assert report.identity_residual < 1e-8


def test_monogamy_residual_tracks_qd_cc_gap():
    report = monogamy(XXParams(B1=1.0, B2=1.0, T=1.5))
    assert report.identity_residual > 1e-3
    assert report.identity_residual == pytest.approx(abs(report.CC_AB - report.QD_AB) / 2, abs=1e-10)


def test_monogamy_at_low_temperature():
    report = monogamy(XXParams(T=0.01))
    assert report.EN_AB == pytest.approx(1.0, abs=1e-8)
    assert report.QD_AB == pytest.approx(1.0, abs=1e-8)
    assert report.S_A == pytest.approx(1.0, abs=1e-8)
    assert report.EN_AE == pytest.approx(0.0, abs=1e-8)
    assert report.CC_AE == pytest.approx(0.0, abs=1e-8)
    assert report.QD_AE == pytest.approx(0.0, abs=1e-8)


# sweeps


def test_field_sweep_rows():
    rows = sweep_field(1.5, 1.0, [0.0, 0.5, 1.0])
    assert [r["B1"] for r in rows] == [0.0, 0.5, 1.0]
    assert all(r["B2"] == -r["B1"] for r in rows)
    for r in rows:
        assert r["QD"] == pytest.approx(r["CC"], abs=1e-6)
        assert r["I"] == pytest.approx(r["QD"] + r["CC"])


def test_uniform_field_sweep():
    rows = sweep_field(1.5, -1.0, [1.0])
    assert rows[0]["B2"] == 1.0
    assert rows[0]["QD"] > rows[0]["CC"]


def test_sweeps_are_deterministic_across_workers():
    temps = [0.5, 1.0, 2.0]
    assert sweep_temperature(1.0, 0.5, temps) == sweep_temperature(1.0, 0.5, temps, workers=3)
    rows = sweep_temperature(1.0, 0.5, temps)
    assert [r["T"] for r in rows] == temps


def test_monogamy_sweep_columns():
    rows = sweep_monogamy([XXParams(B1=b, B2=-b, T=1.5) for b in (0.5, 1.0)], workers=2)
    assert len(rows) == 2
    assert {"B1", "B2", "T", "EN_AB", "QD_AE", "identity_residual"} <= set(rows[0])
    assert max(r["identity_residual"] for r in rows) < 1e-8
