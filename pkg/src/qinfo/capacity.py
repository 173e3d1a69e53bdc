"""
Entanglement-generation rates under canonical nonlocal Hamiltonians.

The rate is dE/dt for |psi(t)> = exp(-iHt)|psi>, with E the geometric
measure ||T|| - ||T||_sep (or, for `measure="entropy"`, the von Neumann
entropy of the first party). hbar = 1.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize_scalar

from .errors import InvalidDimensionError, ParameterRangeError, SingularityError
from .measures import geometric_entanglement, three_tangle
from .optimize import OptimizationReport, multistart_maximize, sphere_starts
from .qstate import (
    BlochDecomposition,
    PartitionSpec,
    PureStateVector,
    correlation_tensor,
    expectation_tensor,
    from_pure,
    group_matrix,
    group_vector,
    partial_trace,
    reduce_matrix,
    schmidt_decompose,
    von_neumann_entropy,
)
from .su_basis import StructureConstants, build_generators, structure_constants

logger = logging.getLogger(__name__)

_EPS3 = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS3[_i, _j, _k] = 1.0
    _EPS3[_j, _i, _k] = -1.0


class SystemKind(str, Enum):
    TWO_QUBIT = "two_qubit"
    TWO_QUTRIT = "two_qutrit"
    THREE_QUBIT = "three_qubit"

    @property
    def dims(self) -> tuple[int, ...]:
        return {"two_qubit": (2, 2), "two_qutrit": (3, 3), "three_qubit": (2, 2, 2)}[self.value]


@dataclass(frozen=True, eq=False)
class CouplingSpec:
    """
    Canonical-form interaction strengths.

    two_qubit: (mu1, mu2, mu3) with mu1 >= mu2 >= |mu3|
    two_qutrit: 8 non-increasing strengths
    three_qubit: rows mu_AB, mu_BC, mu_AC, each non-increasing
    """
    kind: SystemKind
    mu: np.ndarray

    def __post_init__(self):
        kind = SystemKind(self.kind)
        mu = np.asarray(self.mu, dtype=float)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "mu", mu)
        shape = {SystemKind.TWO_QUBIT: (3,), SystemKind.TWO_QUTRIT: (8,), SystemKind.THREE_QUBIT: (3, 3)}[kind]
        if mu.shape != shape:
            raise ParameterRangeError(f"{kind.value} coupling needs shape {shape}, got {mu.shape}")
        tol = 1e-12
        if kind is SystemKind.TWO_QUBIT:
            if not (mu[0] >= mu[1] - tol and mu[1] >= abs(mu[2]) - tol):
                raise ParameterRangeError(f"two-qubit strengths must satisfy mu1 >= mu2 >= |mu3|, got {mu}")
        else:
            for row in np.atleast_2d(mu):
                if np.any(np.diff(row) > tol):
                    raise ParameterRangeError(f"strengths must be non-increasing, got {row}")

    @classmethod
    def two_qubit(cls, mu1: float, mu2: float, mu3: float) -> "CouplingSpec":
        return cls(SystemKind.TWO_QUBIT, [mu1, mu2, mu3])

    @classmethod
    def two_qutrit(cls, mu: Sequence[float]) -> "CouplingSpec":
        return cls(SystemKind.TWO_QUTRIT, mu)

    @classmethod
    def three_qubit(cls, mu_ab: Sequence[float], mu_bc: Sequence[float], mu_ac: Sequence[float]) -> "CouplingSpec":
        return cls(SystemKind.THREE_QUBIT, [mu_ab, mu_bc, mu_ac])

    @classmethod
    def isotropic(cls, kind, mu: float = 1.0) -> "CouplingSpec":
        kind = SystemKind(kind)
        n = {SystemKind.TWO_QUBIT: (3,), SystemKind.TWO_QUTRIT: (8,), SystemKind.THREE_QUBIT: (3, 3)}[kind]
        return cls(kind, np.full(n, float(mu)))

    @property
    def dims(self) -> tuple[int, ...]:
        return self.kind.dims

    @property
    def is_isotropic(self) -> bool:
        return bool(np.allclose(self.mu, self.mu.flat[0]))


def canonical_hamiltonian(coupling: CouplingSpec) -> np.ndarray:
    if coupling.kind is SystemKind.THREE_QUBIT:
        paulis = build_generators(2).generators
        eye = np.eye(2)
        mu_ab, mu_bc, mu_ac = coupling.mu
        h = np.zeros((8, 8), dtype=complex)
        for i, s in enumerate(paulis):
            h += mu_ab[i] * np.kron(np.kron(s, s), eye)
            h += mu_bc[i] * np.kron(eye, np.kron(s, s))
            h += mu_ac[i] * np.kron(np.kron(s, eye), s)
        return h
    gens = build_generators(coupling.dims[0]).generators
    return sum(m * np.kron(g, g) for m, g in zip(coupling.mu, gens))


# rate kernels on raw arrays


def _rate_two_party(lam_a: np.ndarray, lam_b: np.ndarray, t: np.ndarray,
                    mu: np.ndarray, f: np.ndarray, d: int) -> float:
    """-(d/||T||) sum mu_p f_klp (T_kp L^A_l + T_pk L^B_l), L the bare <l>."""
    norm = np.linalg.norm(t)
    if norm == 0:
        raise SingularityError("correlation tensor vanishes")
    total = np.einsum("p,klp,kp,l->", mu, f, t, lam_a) + np.einsum("p,klp,pk,l->", mu, f, t, lam_b)
    return float(-d * total / norm)


def _rate_three_qubit(t_ab, t_bc, t_ac, tau, mu_ab, mu_bc, mu_ac) -> float:
    norm = np.linalg.norm(tau)
    if norm == 0:
        raise SingularityError("three-party correlation tensor vanishes")
    e = _EPS3
    tau_dot = -2 * (
        np.einsum("j,jic,ck->ijk", mu_ab, e, t_ac)
        + np.einsum("i,ije,ek->ijk", mu_ab, e, t_bc)
        + np.einsum("k,kjc,ic->ijk", mu_bc, e, t_ab)
        + np.einsum("j,jke,ie->ijk", mu_bc, e, t_ac)
        + np.einsum("k,kic,cj->ijk", mu_ac, e, t_ab)
        + np.einsum("i,ike,je->ijk", mu_ac, e, t_bc)
    )
    return float(np.sum(tau * tau_dot) / norm)


def _two_party_arrays(amps: np.ndarray, d: int):
    rho = np.outer(amps, amps.conj())
    lam_a = expectation_tensor(reduce_matrix(rho, (d, d), [0]), (d,))
    lam_b = expectation_tensor(reduce_matrix(rho, (d, d), [1]), (d,))
    return lam_a, lam_b, correlation_tensor(rho, (d, d))


def _three_qubit_arrays(amps: np.ndarray):
    rho = np.outer(amps, amps.conj())
    dims = (2, 2, 2)
    t_ab = expectation_tensor(reduce_matrix(rho, dims, [0, 1]), (2, 2))
    t_bc = expectation_tensor(reduce_matrix(rho, dims, [1, 2]), (2, 2))
    t_ac = expectation_tensor(reduce_matrix(rho, dims, [0, 2]), (2, 2))
    return t_ab, t_bc, t_ac, expectation_tensor(rho, dims)


def _entropy_rate_arrays(amps: np.ndarray, h: np.ndarray, dims: tuple[int, int]) -> float:
    rho = np.outer(amps, amps.conj())
    rho_dot = -1j * (h @ rho - rho @ h)
    rho_a = reduce_matrix(rho, dims, [0])
    rho_a_dot = reduce_matrix(rho_dot, dims, [0])
    evals, vecs = np.linalg.eigh(rho_a)
    diag = np.einsum("ik,ij,jk->k", vecs.conj(), rho_a_dot, vecs).real
    keep = evals > 1e-14
    return float(-np.sum(diag[keep] * np.log2(evals[keep])))


def _check_bd(bd: BlochDecomposition, dims: tuple[int, ...]):
    if bd.partition.local_dims != dims:
        raise InvalidDimensionError(f"expected local dims {dims}, got {bd.partition.local_dims}")


# public rates


def rate_two_qubit(bd: BlochDecomposition, mu: Sequence[float]) -> float:
    """(2/||T||) sum_n mu_n [(r x tau_:n)_n + (s x tau_n:)_n]."""
    _check_bd(bd, (2, 2))
    r, s = bd.coherence_vectors
    tau = bd.tensor(0, 1)
    norm = np.linalg.norm(tau)
    if norm == 0:
        raise SingularityError("correlation tensor vanishes")
    mu = np.asarray(mu, dtype=float)
    total = sum(mu[n] * (np.cross(r, tau[:, n])[n] + np.cross(s, tau[n, :])[n]) for n in range(3))
    return float(2 * total / norm)


def rate_qutrit(bd: BlochDecomposition, mu: Sequence[float], sc: StructureConstants) -> float:
    _check_bd(bd, (3, 3))
    d = 3
    lam_a = 2 * bd.coherence_vectors[0] / d
    lam_b = 2 * bd.coherence_vectors[1] / d
    return _rate_two_party(lam_a, lam_b, bd.tensor(0, 1), np.asarray(mu, dtype=float), sc.f, d)


def qutrit_triplets(sc: StructureConstants, tol: float = 1e-12) -> list[tuple[tuple[int, int, int], float]]:
    """Index triplets i<j<k with non-zero f_ijk and their weights."""
    n = sc.f.shape[0]
    return [((i, j, k), float(sc.f[i, j, k]))
            for i, j, k in combinations(range(n), 3) if abs(sc.f[i, j, k]) > tol]


def rate_qutrit_triplets(bd: BlochDecomposition, mu: Sequence[float], sc: StructureConstants) -> float:
    """Same rate grouped by triplets; each triplet acts like an SU(2) cross product."""
    _check_bd(bd, (3, 3))
    direct = rate_qutrit(bd, mu, sc)
    d = 3
    lam_a = 2 * bd.coherence_vectors[0] / d
    lam_b = 2 * bd.coherence_vectors[1] / d
    t = bd.tensor(0, 1)
    mu = np.asarray(mu, dtype=float)
    total = 0.0
    for idx, weight in qutrit_triplets(sc):
        ix = list(idx)
        sub_t = t[np.ix_(ix, ix)]
        a, b, m = lam_a[ix], lam_b[ix], mu[ix]
        for p in range(3):
            total += weight * m[p] * (np.cross(a, sub_t[:, p])[p] + np.cross(b, sub_t[p, :])[p])
    value = float(d * total / np.linalg.norm(t))
    if abs(value - direct) > 1e-9 * max(1.0, abs(direct)):
        logger.warning("triplet expansion gives %.10g, structure-constant sum %.10g", value, direct)
    return value


def rate_three_qubit(bd: BlochDecomposition, coupling: CouplingSpec) -> float:
    _check_bd(bd, (2, 2, 2))
    mu_ab, mu_bc, mu_ac = coupling.mu
    return _rate_three_qubit(bd.tensor(0, 1), bd.tensor(1, 2), bd.tensor(0, 2), bd.tensor(0, 1, 2),
                             mu_ab, mu_bc, mu_ac)


def entropy_rate(psi: PureStateVector, h: np.ndarray, partition: PartitionSpec) -> float:
    """d/dt S(rho_A) = -Tr(d(rho_A)/dt log2 rho_A)."""
    if partition.n_parts != 2 or tuple(psi.dims) != partition.unit_dims:
        raise InvalidDimensionError("entropy rate needs a bipartite partition matching the state")
    return _entropy_rate_arrays(group_vector(psi.amplitudes, partition), group_matrix(h, partition),
                                partition.local_dims)


def rate_finite_difference(psi: PureStateVector, h: np.ndarray, partition: PartitionSpec,
                           dt: float = 1e-5, measure: str = "geometric") -> float:
    """[E(exp(-iH dt) psi) - E(exp(iH dt) psi)] / (2 dt)."""
    if dt <= 0:
        raise ParameterRangeError("dt must be positive")

    def value(amps):
        state = PureStateVector.normalized(psi.dims, amps)
        if measure == "entropy":
            return von_neumann_entropy(partial_trace(from_pure(state), partition, [0]))
        return geometric_entanglement(state, partition)

    forward = expm(-1j * h * dt) @ psi.amplitudes
    backward = expm(1j * h * dt) @ psi.amplitudes
    return (value(forward) - value(backward)) / (2 * dt)


# the two-qubit optimum


def psi_E(p: float) -> PureStateVector:
    """sqrt(p)|01> + i sqrt(1-p)|10>."""
    if not 0 <= p <= 1:
        raise ParameterRangeError(f"p must lie in [0, 1], got {p}")
    amps = np.zeros(4, dtype=complex)
    amps[1] = np.sqrt(p)
    amps[2] = 1j * np.sqrt(1 - p)
    return PureStateVector((2, 2), amps)


def f_geometric(p: float) -> float:
    """Rate of the geometric measure on psi_E(p) per unit mu1 + mu2."""
    q = p * (1 - p)
    return float(8 * (1 - 2 * p) * np.sqrt(q) / np.sqrt(1 + 8 * q))


def f_entropy(p: float) -> float:
    """Rate of the entanglement entropy on psi_E(p) per unit mu1 + mu2."""
    if p <= 0 or p >= 1:
        return 0.0
    return float(2 * np.sqrt(p * (1 - p)) * np.log2((1 - p) / p))


def find_p0() -> tuple[float, float]:
    res = minimize_scalar(lambda p: -f_entropy(p), bounds=(1e-9, 0.5), method="bounded",
                          options={"xatol": 1e-12})
    return float(res.x), float(-res.fun)


# numerical maximization


def state_from_params(x: np.ndarray, dim: int) -> np.ndarray:
    """Sphere chart: 2D-1 reals, imaginary part of the first amplitude fixed to 0."""
    re = x[:dim]
    im = np.concatenate(([0.0], x[dim:]))
    amps = re + 1j * im
    norm = np.linalg.norm(amps)
    return amps / norm if norm > 0 else np.eye(dim, 1).ravel().astype(complex)


def _objective(coupling: CouplingSpec, measure: str):
    dims = coupling.dims
    dim = int(np.prod(dims))
    if coupling.kind is SystemKind.THREE_QUBIT:
        mu_ab, mu_bc, mu_ac = coupling.mu

        def rate(x):
            return _rate_three_qubit(*_three_qubit_arrays(state_from_params(x, dim)), mu_ab, mu_bc, mu_ac)
        return rate

    d = dims[0]
    if measure == "entropy":
        h = canonical_hamiltonian(coupling)

        def rate(x):
            return _entropy_rate_arrays(state_from_params(x, dim), h, dims)
        return rate

    f = structure_constants(build_generators(d)).f
    mu = coupling.mu

    def rate(x):
        return _rate_two_party(*_two_party_arrays(state_from_params(x, dim), d), mu, f, d)
    return rate


def maximize_rate(kind, coupling: CouplingSpec, restarts: int = 50, seed: int = 0,
                  measure: str = "geometric", workers: int = 1,
                  options: Optional[dict] = None) -> OptimizationReport:
    kind = SystemKind(kind)
    if coupling.kind is not kind:
        raise ParameterRangeError(f"coupling is for {coupling.kind.value}, not {kind.value}")
    if restarts < 1:
        raise ParameterRangeError("restarts must be >= 1")
    if measure not in ("geometric", "entropy"):
        raise ParameterRangeError(f"unknown measure '{measure}'")
    if measure == "entropy" and kind is SystemKind.THREE_QUBIT:
        raise ParameterRangeError("entropy rate is defined for two-party systems only")

    dims = coupling.dims
    dim = int(np.prod(dims))
    logger.info("maximizing %s rate for %s: %d restarts, seed %d", measure, kind.value, restarts, seed)
    result = multistart_maximize(
        _objective(coupling, measure),
        sphere_starts(2 * dim - 1, restarts, seed),
        options=options or {"maxiter": 1000, "ftol": 1e-14, "gtol": 1e-10},
        workers=workers,
    )
    best = PureStateVector(dims, state_from_params(result.x, dim))
    report = OptimizationReport.from_result(result, best, seed)
    if coupling.is_isotropic or kind is SystemKind.TWO_QUBIT:
        report.extras.update(describe_state(best))
    logger.info("best rate %.8g (converged=%s)", result.value, result.converged)
    return report


def describe_state(psi: PureStateVector) -> dict:
    """Local-unitary invariants of a two- or three-party pure state."""
    partition = PartitionSpec.qudits(psi.dims)
    info = {"E": geometric_entanglement(psi, partition)}
    if len(psi.dims) == 2:
        info["schmidt"] = schmidt_decompose(psi, partition).coefficients
    else:
        rho = from_pure(psi)
        info["tangle"] = three_tangle(psi)
        info["local_purities"] = np.array([
            np.trace(np.linalg.matrix_power(partial_trace(rho, partition, [k]).data, 2)).real
            for k in range(len(psi.dims))
        ])
    return info
