"""
Two-qubit XX chain in nonuniform fields at thermal equilibrium.

The Hamiltonian is taken with the spectrum
  E_00 = -(B1+B2), E_11 = B1+B2, E_+- = +-D, D = sqrt((B1-B2)^2 + J^2),
that is H = (J/2)(XX + YY) - B1 Z x I - B2 I x Z. Units: k = 1, |J| = 1.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from functools import partial
from typing import Iterable

import numpy as np
from scipy.linalg import eigh
from scipy.optimize import brentq, minimize

from .errors import InvalidDimensionError, ParameterRangeError, PositivityError
from .measures import concurrence, eof_from_concurrence
from .qstate import DensityMatrix, PartitionSpec, mutual_information, partial_trace, von_neumann_entropy
from .su_basis import build_generators

logger = logging.getLogger(__name__)

PAULIS = build_generators(2).generators
TWO_QUBITS = PartitionSpec.qudits((2, 2))


@dataclass(frozen=True)
class XXParams:
    J: float = 1.0
    B1: float = 0.0
    B2: float = 0.0
    T: float = 1.0

    def __post_init__(self):
        if not self.T > 0:
            raise ParameterRangeError(f"temperature must be positive, got {self.T}")
        if self.J == 0:
            raise ParameterRangeError("J must be non-zero")

    @property
    def D(self) -> float:
        return float(np.hypot(self.B1 - self.B2, self.J))


@dataclass(frozen=True, eq=False)
class ThermalState:
    """Entries share a common positive scale factor, which cancels in rho."""
    rho: DensityMatrix
    Z: float
    u1: float
    u2: float
    w1: float
    w2: float
    v: float


@dataclass(frozen=True)
class CorrelationReport:
    QD: float
    CC: float
    I: float


@dataclass(frozen=True)
class TheoremCheck:
    holds: bool
    c: tuple[float, float, float]
    I: float
    CC: float
    QD: float
    verified: bool


@dataclass(frozen=True)
class MonogamyReport:
    EN_AB: float
    QD_AB: float
    CC_AB: float
    S_A: float
    EN_AE: float
    QD_AE: float
    CC_AE: float
    identity_residual: float


def xx_hamiltonian(p: XXParams) -> np.ndarray:
    x, y, z = PAULIS
    eye = np.eye(2)
    return (p.J / 2 * (np.kron(x, x) + np.kron(y, y))
            - p.B1 * np.kron(z, eye) - p.B2 * np.kron(eye, z))


def xx_eigenvector(p: XXParams, sign: int) -> np.ndarray:
    """|psi+-> = (|01> + ((B1-B2) +- D)/J |10>) / N."""
    vec = np.zeros(4)
    vec[1] = 1.0
    vec[2] = ((p.B1 - p.B2) + sign * p.D) / p.J
    return vec / np.linalg.norm(vec)


def thermal_state(p: XXParams) -> ThermalState:
    t = p.T
    b_sum, b_diff, d = p.B1 + p.B2, p.B1 - p.B2, p.D
    shift = max(abs(b_sum), d) / t
    u1 = np.exp(b_sum / t - shift)
    u2 = np.exp(-b_sum / t - shift)
    ep, em = np.exp(d / t - shift), np.exp(-d / t - shift)
    cosh, sinh = (ep + em) / 2, (ep - em) / 2
    w1 = cosh + b_diff / d * sinh
    w2 = cosh - b_diff / d * sinh
    v = -p.J * sinh / d
    z = u1 + u2 + w1 + w2
    data = np.array([
        [u1, 0, 0, 0],
        [0, w1, v, 0],
        [0, v, w2, 0],
        [0, 0, 0, u2],
    ], dtype=complex) / z
    return ThermalState(DensityMatrix((2, 2), data), float(z), float(u1), float(u2), float(w1), float(w2), float(v))


def thermal_state_exact(p: XXParams) -> np.ndarray:
    """exp(-H/T)/Z by eigendecomposition."""
    evals, vecs = eigh(xx_hamiltonian(p))
    weights = np.exp(-(evals - evals.min()) / p.T)
    rho = (vecs * weights) @ vecs.conj().T
    return rho / weights.sum()


def thermal_concurrence(p: XXParams) -> float:
    s = thermal_state(p)
    return float(2 / s.Z * max(abs(s.v) - np.sqrt(s.u1 * s.u2), 0.0))


# classical correlation and discord


def _pauli_data(data: np.ndarray):
    r = np.einsum("ab,iba->i", data, np.array([np.kron(s, np.eye(2)) for s in PAULIS])).real
    s = np.einsum("ab,iba->i", data, np.array([np.kron(np.eye(2), s) for s in PAULIS])).real
    t = np.array([[np.trace(data @ np.kron(a, b)).real for b in PAULIS] for a in PAULIS])
    return r, s, t


def _bloch_entropy(norm: np.ndarray) -> np.ndarray:
    x = np.clip((1 + norm) / 2, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -x * np.log2(x) - (1 - x) * np.log2(1 - x)
    return np.nan_to_num(h, nan=0.0)


def _measured_information(directions: np.ndarray, r, s, t, s_b: float) -> np.ndarray:
    """S(rho_B) - sum_k p_k S(rho_B|k) for projective measurements on A along `directions`."""
    rn = directions @ r
    tn = directions @ t
    cond = np.zeros(len(directions))
    for sign in (1, -1):
        p = (1 + sign * rn) / 2
        with np.errstate(divide="ignore", invalid="ignore"):
            b = (s + sign * tn) / (1 + sign * rn)[:, None]
        term = p * _bloch_entropy(np.linalg.norm(b, axis=1))
        cond += np.where(p > 1e-15, term, 0.0)
    return s_b - cond


def _direction(theta, phi) -> np.ndarray:
    return np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1)


def classical_correlation(rho: DensityMatrix, grid_step: float = np.pi / 400, refine: int = 4) -> float:
    """Maximum over projective measurements on qubit A, by grid search then local refinement."""
    if rho.dims != (2, 2):
        raise InvalidDimensionError(f"classical correlation needs a two-qubit state, got {rho.dims}")
    r, s, t = _pauli_data(rho.data)
    s_b = von_neumann_entropy(partial_trace(rho, TWO_QUBITS, [1]))

    thetas = np.arange(0.0, np.pi + grid_step / 2, grid_step)
    phis = np.arange(0.0, 2 * np.pi, grid_step)
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    values = _measured_information(_direction(th.ravel(), ph.ravel()), r, s, t, s_b)

    def negative(x):
        return -_measured_information(_direction(x[0], x[1])[None, :], r, s, t, s_b)[0]

    best = float(values.max())
    for idx in np.argsort(values)[::-1][:refine]:
        res = minimize(negative, [th.ravel()[idx], ph.ravel()[idx]], method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000})
        best = max(best, float(-res.fun))
    return best


def is_bell_diagonal(rho: DensityMatrix, tol: float = 1e-12) -> bool:
    r, s, t = _pauli_data(rho.data)
    off = t - np.diag(np.diag(t))
    return bool(max(np.abs(r).max(), np.abs(s).max(), np.abs(off).max()) < tol)


def bell_diagonal_state(c: Iterable[float]) -> DensityMatrix:
    c = np.asarray(list(c), dtype=float)
    data = np.eye(4, dtype=complex)
    for ci, sigma in zip(c, PAULIS):
        data = data + ci * np.kron(sigma, sigma)
    evals = np.linalg.eigvalsh(data / 4)
    if evals.min() < -1e-12:
        raise PositivityError(f"c = {tuple(c)} does not define a state")
    return DensityMatrix((2, 2), data / 4)


def _bell_diagonal_spectrum(c) -> np.ndarray:
    c1, c2, c3 = c
    return np.array([
        1 - c1 - c2 - c3,
        1 - c1 + c2 + c3,
        1 + c1 - c2 + c3,
        1 + c1 + c2 - c3,
    ]) / 4


def _cc_closed_form(c: float) -> float:
    total = 0.0
    for x in (1 - c, 1 + c):
        if x > 0:
            total += x / 2 * np.log2(x)
    return float(total)


def bell_diagonal_qd_cc(c: Iterable[float]) -> CorrelationReport:
    """Closed form for rho = (1/4)[I + sum c_i sigma_i x sigma_i]."""
    c = np.asarray(list(c), dtype=float)
    lam = _bell_diagonal_spectrum(c)
    if lam.min() < -1e-12:
        raise PositivityError(f"c = {tuple(c)} does not define a state")
    lam = lam[lam > 0]
    mi = float(2 + np.sum(lam * np.log2(lam)))
    cc = _cc_closed_form(float(np.max(np.abs(c))))
    return CorrelationReport(QD=mi - cc, CC=cc, I=mi)


def qd_cc(rho: DensityMatrix, grid_step: float = np.pi / 400) -> CorrelationReport:
    if rho.dims != (2, 2):
        raise InvalidDimensionError(f"discord needs a two-qubit state, got {rho.dims}")
    if is_bell_diagonal(rho):
        _, _, t = _pauli_data(rho.data)
        return bell_diagonal_qd_cc(np.diag(t))
    mi = mutual_information(rho, TWO_QUBITS)
    cc = classical_correlation(rho, grid_step)
    return CorrelationReport(QD=mi - cc, CC=cc, I=mi)


def theorem_qd_eq_cc(c1: float, c2: float, c3: float, tol: float = 1e-12) -> TheoremCheck:
    """
    Bell-diagonal states with c_i = c_j and c_k = -c_i^2 carry equal discord and
    classical correlation: I = (1-c)log2(1-c) + (1+c)log2(1+c) = 2 CC.
    """
    c = (float(c1), float(c2), float(c3))
    report = bell_diagonal_qd_cc(c)
    holds = any(
        abs(c[i] - c[j]) <= tol and abs(c[k] + c[i] ** 2) <= tol
        for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0))
    )
    verified = False
    if holds:
        big = float(np.max(np.abs(c)))
        closed = 2 * _cc_closed_form(big)
        verified = abs(report.I - closed) < 1e-10 and abs(report.QD - report.CC) < 1e-10
    return TheoremCheck(holds, c, report.I, report.CC, report.QD, verified)


# monogamy with the purifying environment


def monogamy(p: XXParams, grid_step: float = np.pi / 400) -> MonogamyReport:
    rho = thermal_state(p).rho
    corr = qd_cc(rho, grid_step)
    en_ab = eof_from_concurrence(concurrence(rho))
    s_a = von_neumann_entropy(partial_trace(rho, TWO_QUBITS, [0]))
    en_ae = s_a - corr.CC
    cc_ae = s_a - en_ab
    qd_ae = en_ab + en_ae - corr.QD
    residual = abs(corr.I / 2 - (en_ae + en_ab - qd_ae))
    return MonogamyReport(en_ab, corr.QD, corr.CC, s_a, en_ae, qd_ae, cc_ae, residual)


# critical temperature and the zero-concurrence window


def critical_temperature(B1: float, J: float = 1.0) -> float:
    """T solving |J| sinh(D/T) = D for B1 = -B2, D = sqrt(4 B1^2 + J^2)."""
    if J == 0:
        raise ParameterRangeError("no finite critical temperature for J = 0")
    d = float(np.hypot(2 * B1, J))
    aj = abs(J)

    def g(t):
        return aj * np.sinh(d / t) / d - 1

    root = brentq(g, d / 700, 1e6 * d, xtol=1e-14, rtol=1e-14)
    logger.debug("critical temperature for B1=%g: %.12g (closed form %.12g)", B1, root, d / np.arcsinh(d / aj))
    return float(root)


def zero_concurrence_half_width(T: float, J: float = 1.0) -> float:
    """Largest |B1| (with B2 = -B1) for which the thermal concurrence vanishes; 0 if it never does."""
    if T <= 0:
        raise ParameterRangeError("temperature must be positive")
    if J == 0:
        raise ParameterRangeError("J must be non-zero")
    aj = abs(J)

    def g(d):
        return aj * np.sinh(d / T) - d

    if g(aj) > 0:
        return 0.0
    hi = 2 * aj
    while g(hi) <= 0:
        hi *= 2
    d_star = brentq(g, aj, hi, xtol=1e-14, rtol=1e-14)
    return float(np.sqrt(d_star ** 2 - aj ** 2) / 2)


# sweeps


def _row(p: XXParams, grid_step: float) -> dict:
    rho = thermal_state(p).rho
    corr = qd_cc(rho, grid_step)
    return {
        "B1": p.B1, "B2": p.B2, "T": p.T,
        "QD": corr.QD, "CC": corr.CC, "I": corr.I,
        "EN": eof_from_concurrence(thermal_concurrence(p)),
    }


def _map(fn, items, workers: int) -> list:
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def sweep_field(T: float, ratio: float, b1_values: Iterable[float], J: float = 1.0, workers: int = 1,
                grid_step: float = np.pi / 400) -> list[dict]:
    """Rows over B1 with B2 = -ratio * B1 (ratio = -1 gives a uniform field)."""
    params = [XXParams(J=J, B1=float(b), B2=-ratio * float(b), T=T) for b in b1_values]
    logger.info("field sweep: %d points at T=%g, ratio=%g", len(params), T, ratio)
    return _map(partial(_row, grid_step=grid_step), params, workers)


def sweep_temperature(B1: float, B2: float, t_values: Iterable[float], J: float = 1.0,
                      workers: int = 1, grid_step: float = np.pi / 400) -> list[dict]:
    params = [XXParams(J=J, B1=B1, B2=B2, T=float(t)) for t in t_values]
    logger.info("temperature sweep: %d points at B1=%g, B2=%g", len(params), B1, B2)
    return _map(partial(_row, grid_step=grid_step), params, workers)


def sweep_monogamy(params: Iterable[XXParams], workers: int = 1,
                   grid_step: float = np.pi / 400) -> list[dict]:
    params = list(params)

    def row(p):
        m = monogamy(p, grid_step)
        return {"B1": p.B1, "B2": p.B2, "T": p.T, **asdict(m)}

    return _map(row, params, workers)
