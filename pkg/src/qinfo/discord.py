"""
Geometric quantum discord of m x n states, measured on the first party.

Local operator bases are X_1 = I/sqrt(m), X_i = l_(i-1)/sqrt(2) (and the same
for the second party); C_ij = Tr(rho X_i x Y_j).
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

from .errors import InvalidDimensionError, NormalizationError, ParameterRangeError, UnsupportedDimensionError
from .optimize import multistart_maximize
from .qstate import DensityMatrix, PartitionSpec, PureStateVector, bloch_decompose, from_pure
from .su_basis import build_generators

logger = logging.getLogger(__name__)


@dataclass
class DiscordReport:
    D_formula: float
    D_lower_bound: float
    G_eigenvalues: np.ndarray
    chosen_eigen_indices: list[int]
    D_bruteforce: Optional[float] = None

    @property
    def gap(self) -> Optional[float]:
        if self.D_bruteforce is None:
            return None
        return self.D_bruteforce - self.D_formula


@dataclass
class WitnessReport:
    rank_L: int
    rank_witness_fired: bool
    commutators_max_norm: float
    is_zero_discord: bool
    singular_values: np.ndarray = field(default_factory=lambda: np.zeros(0))


def _dims(rho: DensityMatrix) -> tuple[int, int]:
    if len(rho.dims) != 2 or min(rho.dims) < 2:
        raise InvalidDimensionError(f"geometric discord needs a bipartite state, got dims {rho.dims}")
    return rho.dims


def local_bloch(rho: DensityMatrix):
    """x, y, T with the (m/2), (n/2), (mn/4) prefactors."""
    bd = bloch_decompose(rho, PartitionSpec.qudits(_dims(rho)))
    x, y = bd.coherence_vectors
    return x, y, bd.tensor(0, 1)


def operator_basis(d: int) -> np.ndarray:
    gens = build_generators(d).generators
    return np.concatenate([np.eye(d)[None] / np.sqrt(d), gens / np.sqrt(2)])


def correlation_matrix(rho: DensityMatrix) -> np.ndarray:
    m, n = _dims(rho)
    ops_a, ops_b = operator_basis(m), operator_basis(n)
    t = rho.data.reshape(m, n, m, n)
    return np.einsum("abcd,ica,jdb->ij", t, ops_a, ops_b).real


def geometric_discord_2q(rho: DensityMatrix) -> float:
    if rho.dims != (2, 2):
        raise InvalidDimensionError(f"two-qubit formula needs dims (2, 2), got {rho.dims}")
    x, _, t = local_bloch(rho)
    k = np.outer(x, x) + t @ t.T
    return float((x @ x + np.sum(t * t) - np.linalg.eigvalsh(k)[-1]) / 4)


def discord_lower_bound(rho: DensityMatrix) -> float:
    m, _ = _dims(rho)
    c = correlation_matrix(rho)
    evals = np.linalg.eigvalsh(c @ c.T)
    return float(np.trace(c @ c.T) - np.sum(evals[::-1][:m]))


def geometric_discord_mn(rho: DensityMatrix) -> DiscordReport:
    """
    D = (2/(m^2 n)) [||x||^2 + (2/n)||T||^2 - sum_l eta_((l+1)^2-1)],
    eta the ascending eigenvalues of G = x x^t + (2/n) T T^t.
    """
    m, n = _dims(rho)
    x, _, t = local_bloch(rho)
    g = np.outer(x, x) + (2 / n) * t @ t.T
    eta = np.linalg.eigvalsh(g)
    chosen = build_generators(m).diagonal_indices
    value = 2 / (m * m * n) * (x @ x + (2 / n) * np.sum(t * t) - np.sum(eta[chosen]))
    if value < -1e-10:
        logger.warning("negative geometric discord %.3g", value)
    return DiscordReport(
        D_formula=float(value),
        D_lower_bound=discord_lower_bound(rho),
        G_eigenvalues=eta,
        chosen_eigen_indices=list(chosen),
    )


def werner_state(m: int, z: float) -> DensityMatrix:
    """((m - z) I + (m z - 1) F) / (m^3 - m), F the swap."""
    if m < 2:
        raise InvalidDimensionError("Werner state needs m >= 2")
    if not -1 <= z <= 1:
        raise ParameterRangeError(f"z must lie in [-1, 1], got {z}")
    swap = np.eye(m * m).reshape(m, m, m, m).transpose(0, 1, 3, 2).reshape(m * m, m * m)
    data = ((m - z) * np.eye(m * m) + (m * z - 1) * swap) / (m ** 3 - m)
    return DensityMatrix((m, m), data)


def werner_discord(m: int, z: float) -> float:
    if m < 2:
        raise InvalidDimensionError("Werner state needs m >= 2")
    if not -1 <= z <= 1:
        raise ParameterRangeError(f"z must lie in [-1, 1], got {z}")
    return float((m * z - 1) ** 2 / (m * (m - 1) * (m + 1) ** 2))


# brute-force oracle


def luo_fu_objective(rho: DensityMatrix, unitary: np.ndarray) -> float:
    """tr(C C^t) - tr(A C C^t A^t) for the measurement basis given by the columns of `unitary`."""
    m, _ = _dims(rho)
    c = correlation_matrix(rho)
    cct = c @ c.T
    return float(np.trace(cct) - _captured(unitary, operator_basis(m), cct))


def _captured(unitary: np.ndarray, ops: np.ndarray, cct: np.ndarray) -> float:
    a = np.einsum("ak,iab,bk->ki", unitary.conj(), ops, unitary).real
    return float(np.trace(a @ cct @ a.T))


def _qubit_captured(directions: np.ndarray, cct: np.ndarray) -> np.ndarray:
    out = np.zeros(len(directions))
    for sign in (1, -1):
        a = np.concatenate([np.full((len(directions), 1), 1.0), sign * directions], axis=1) / np.sqrt(2)
        out += np.einsum("ki,ij,kj->k", a, cct, a)
    return out


def _sphere(theta, phi):
    return np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1)


def bruteforce_geometric_discord(rho: DensityMatrix, restarts: int = 200, seed: int = 0,
                                 grid_points: int = 200, workers: int = 1) -> float:
    """Direct minimization over measurement bases on the first party (m = 2 or 3)."""
    m, _ = _dims(rho)
    c = correlation_matrix(rho)
    cct = c @ c.T
    total = float(np.trace(cct))

    if m == 2:
        theta = np.linspace(0, np.pi, grid_points + 1)
        phi = np.linspace(0, 2 * np.pi, 2 * grid_points, endpoint=False)
        th, ph = np.meshgrid(theta, phi, indexing="ij")
        values = _qubit_captured(_sphere(th.ravel(), ph.ravel()), cct)
        best = float(values.max())
        for idx in np.argsort(values)[::-1][:4]:
            res = minimize(lambda x: -_qubit_captured(_sphere(x[0], x[1])[None, :], cct)[0],
                           [th.ravel()[idx], ph.ravel()[idx]], method="Nelder-Mead",
                           options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000})
            best = max(best, float(-res.fun))
        return total - best

    if m != 3:
        raise UnsupportedDimensionError(f"brute-force search supports m in (2, 3), got {m}")

    gens = build_generators(3).generators
    ops = operator_basis(3)

    def captured(theta):
        return _captured(expm(1j * np.einsum("a,aij->ij", theta, gens)), ops, cct)

    children = np.random.SeedSequence(seed).spawn(max(restarts - 1, 0))
    starts = [np.zeros(8)] + [np.random.default_rng(ch).uniform(-np.pi, np.pi, 8) for ch in children]
    result = multistart_maximize(captured, np.array(starts), options={"maxiter": 500, "gtol": 1e-10},
                                 workers=workers)
    return total - result.value


def discord_report(rho: DensityMatrix, bruteforce: bool = False, restarts: int = 200,
                   seed: int = 0, workers: int = 1) -> DiscordReport:
    report = geometric_discord_mn(rho)
    if bruteforce:
        report.D_bruteforce = bruteforce_geometric_discord(rho, restarts=restarts, seed=seed, workers=workers)
        logger.info("brute-force discord %.10g, formula %.10g, gap %.3g",
                    report.D_bruteforce, report.D_formula, report.gap)
        if report.gap < -1e-6:
            logger.warning("formula exceeds the brute-force value by %.3g", -report.gap)
    return report


# zero-discord witness


def zero_discord_witness(rho: DensityMatrix, rank_tol: float = 1e-9, comm_tol: float = 1e-9) -> WitnessReport:
    m, _ = _dims(rho)
    r = correlation_matrix(rho)
    u, s, _ = np.linalg.svd(r)
    rank = int(np.sum(s > rank_tol * s.max()))
    ops = operator_basis(m)
    s_ops = np.einsum("in,iab->nab", u[:, :rank], ops)
    worst = 0.0
    for a in range(rank):
        for b in range(a + 1, rank):
            comm = s_ops[a] @ s_ops[b] - s_ops[b] @ s_ops[a]
            worst = max(worst, float(np.linalg.norm(comm)))
    fired = rank > m
    return WitnessReport(
        rank_L=rank,
        rank_witness_fired=fired,
        commutators_max_norm=worst,
        is_zero_discord=(not fired) and worst < comm_tol,
        singular_values=s,
    )


# constructions


def classical_quantum_state(probs: Sequence[float], basis: Sequence[np.ndarray],
                            states: Sequence[DensityMatrix]) -> DensityMatrix:
    """sum_k p_k |k><k| x rho_k."""
    probs = np.asarray(probs, dtype=float)
    vecs = np.array([np.asarray(v, dtype=complex) for v in basis])
    if probs.min() < -1e-12 or abs(probs.sum() - 1) > 1e-10:
        raise ParameterRangeError(f"invalid probability vector {probs}")
    if not (len(probs) == len(vecs) == len(states)):
        raise ParameterRangeError("probabilities, basis vectors and states must have equal length")
    m = vecs.shape[1]
    if len(probs) > m:
        raise ParameterRangeError(f"at most {m} blocks fit in dimension {m}")
    if np.max(np.abs(vecs.conj() @ vecs.T - np.eye(len(vecs)))) > 1e-10:
        raise NormalizationError("basis vectors are not orthonormal")
    n = states[0].dim
    data = np.zeros((m * n, m * n), dtype=complex)
    for p, v, state in zip(probs, vecs, states):
        if state.dim != n:
            raise InvalidDimensionError("all conditional states must share one dimension")
        data += p * np.kron(np.outer(v, v.conj()), state.data)
    return DensityMatrix((m, n), data)


def nonorthogonal_separable_state() -> DensityMatrix:
    """Four non-orthogonal qubit states correlated with four on the other qubit."""
    zero, one = np.array([1, 0]), np.array([0, 1])
    plus, minus = (zero + one) / np.sqrt(2), (zero - one) / np.sqrt(2)

    def proj(v):
        return np.outer(v, v)

    data = (np.kron(proj(zero), proj(plus)) + np.kron(proj(one), proj(minus))
            + np.kron(proj(plus), proj(one)) + np.kron(proj(minus), proj(zero))) / 4
    return DensityMatrix((2, 2), data.astype(complex))


def _qutrit_pair(entries: dict) -> np.ndarray:
    amps = np.zeros(9, dtype=complex)
    for (i, j), a in entries.items():
        amps[3 * i + j] = a
    return amps


def example_pure_state() -> PureStateVector:
    """(|11> + |22>)/2 + |33>/sqrt(2) in 1-based qutrit labels."""
    return PureStateVector((3, 3), _qutrit_pair({(0, 0): 0.5, (1, 1): 0.5, (2, 2): 1 / np.sqrt(2)}))


def symmetric_qutrit_state() -> PureStateVector:
    pairs = [(1, 1), (2, 2), (1, 0), (0, 1), (0, 2), (2, 0)]
    return PureStateVector((3, 3), _qutrit_pair({p: 1 / np.sqrt(6) for p in pairs}))


def example_state(which: int, p: Optional[float] = None) -> DensityMatrix:
    """The qutrit example states: 2 (pure), 3 (noisy symmetric state), 4 (mixture of the two)."""
    if which == 2:
        return from_pure(example_pure_state())
    if p is None or not 0 <= p <= 1:
        raise ParameterRangeError(f"example {which} needs p in [0, 1]")
    e = from_pure(symmetric_qutrit_state()).data
    if which == 3:
        return DensityMatrix((3, 3), p * e + (1 - p) * np.eye(9) / 9)
    if which == 4:
        e1 = from_pure(example_pure_state()).data
        return DensityMatrix((3, 3), p * e1 + (1 - p) * e)
    raise ParameterRangeError(f"unknown example {which}")
