"""
Fermionic modes mapped onto qubits.

Modes are zero-indexed and ordered (A up, A down, B up, B down[, C up, C down]).
Mode 0 is the most significant bit of a Fock-state index, and the creation
operator on mode i carries the string (-1)^(sum of occupations of modes j > i).
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Optional

import numpy as np
import scipy.sparse as sp

from .errors import ParameterRangeError, PartitionError
from .measures import correlation_norm_from_amplitudes, geometric_entanglement, sep_norm
from .optimize import OptimizationReport, multistart_maximize, sphere_starts
from .qstate import (
    PartitionSpec,
    PureStateVector,
    from_pure,
    group_vector,
    partial_trace,
    schmidt_decompose,
    von_neumann_entropy,
)

logger = logging.getLogger(__name__)

_LOWER = sp.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
_STRING = sp.csr_matrix(np.diag([1.0, -1.0]))


@dataclass(frozen=True)
class FockBasisState:
    occupations: tuple[int, ...]
    index: int

    def __post_init__(self):
        if any(n not in (0, 1) for n in self.occupations):
            raise ParameterRangeError(f"occupations must be 0 or 1, got {self.occupations}")
        if int("".join(map(str, self.occupations)) or "0", 2) != self.index:
            raise ParameterRangeError(f"index {self.index} does not match {self.occupations}")

    @classmethod
    def from_index(cls, index: int, n_modes: int) -> "FockBasisState":
        if not 0 <= index < 2 ** n_modes:
            raise ParameterRangeError(f"index {index} out of range for {n_modes} modes")
        bits = tuple((index >> (n_modes - 1 - i)) & 1 for i in range(n_modes))
        return cls(bits, index)

    @property
    def particles(self) -> int:
        return sum(self.occupations)

    def __str__(self) -> str:
        return "|" + "".join(map(str, self.occupations)) + ">"


@dataclass(frozen=True)
class NumberSector:
    modes: int
    particles: int
    basis: tuple[FockBasisState, ...]

    @property
    def indices(self) -> np.ndarray:
        return np.array([s.index for s in self.basis])

    @property
    def size(self) -> int:
        return len(self.basis)

    def embed(self, amplitudes: np.ndarray) -> np.ndarray:
        full = np.zeros(2 ** self.modes, dtype=complex)
        full[self.indices] = amplitudes
        return full

    def restrict(self, matrix: np.ndarray) -> np.ndarray:
        idx = self.indices
        return np.asarray(matrix)[np.ix_(idx, idx)]


@dataclass(frozen=True)
class LatticeModelSpec:
    model: str
    t: float
    U: float

    def __post_init__(self):
        if self.model not in ("dimer", "trimer"):
            raise ParameterRangeError(f"unknown lattice model '{self.model}'")
        if self.t <= 0:
            raise ParameterRangeError("hopping t must be positive")

    @property
    def alpha(self) -> float:
        return alpha_from_interaction(self.U, self.t)

    @property
    def beta(self) -> float:
        return self.U / self.t

    @property
    def n_modes(self) -> int:
        return 4 if self.model == "dimer" else 6

    def hamiltonian(self) -> np.ndarray:
        if self.model == "dimer":
            return hubbard_dimer_hamiltonian(self.t, self.U)
        return hubbard_trimer_hamiltonian(self.t, self.beta)


@dataclass(frozen=True)
class FourModeParams:
    f: float = 0.0
    q: float = 0.0
    Gamma: float = 0.0
    gamma: float = 0.0
    eta: float = 0.0


@dataclass(frozen=True)
class DimerEntanglements:
    E_g: float
    E_s: float
    E_vn: float
    E_unequal: float


@dataclass(frozen=True)
class TrimerEntanglements:
    E_six: float
    E_site3: float
    E_bi_A_BC: float
    E_vn_A_BC: float


# operators


def number_sector(modes: int, particles: int) -> NumberSector:
    if not 0 <= particles <= modes:
        raise ParameterRangeError(f"cannot place {particles} particles in {modes} modes")
    indices = sorted(
        sum(1 << (modes - 1 - m) for m in occupied) for occupied in combinations(range(modes), particles)
    )
    return NumberSector(modes, particles, tuple(FockBasisState.from_index(i, modes) for i in indices))


def parity(state: FockBasisState) -> int:
    return -1 if state.particles % 2 else 1


@lru_cache(maxsize=None)
def _annihilator(mode: int, total_modes: int) -> sp.csr_matrix:
    op = sp.identity(1, format="csr")
    for j in range(total_modes):
        if j < mode:
            factor = sp.identity(2, format="csr")
        elif j == mode:
            factor = _LOWER
        else:
            factor = _STRING
        op = sp.kron(op, factor, format="csr")
    return op


def jw_operator(kind: str, mode: int, total_modes: int) -> sp.csr_matrix:
    """Creation or annihilation operator on `mode` (zero-indexed) as a sparse matrix."""
    if not 0 <= mode < total_modes:
        raise ParameterRangeError(f"mode {mode} out of range for {total_modes} modes")
    a = _annihilator(mode, total_modes)
    if kind == "annihilate":
        return a.copy()
    if kind == "create":
        return a.T.tocsr()
    raise ParameterRangeError(f"unknown operator kind '{kind}'")


def mode_number(mode: int, total_modes: int) -> sp.csr_matrix:
    return (jw_operator("create", mode, total_modes) @ jw_operator("annihilate", mode, total_modes)).tocsr()


def number_operator(total_modes: int) -> sp.csr_matrix:
    return sum(mode_number(m, total_modes) for m in range(total_modes)).tocsr()


def spin_z_operator(total_modes: int) -> sp.csr_matrix:
    return 0.5 * sum(mode_number(m, total_modes) * (1 if m % 2 == 0 else -1) for m in range(total_modes))


def _hop(i: int, j: int, n: int) -> sp.csr_matrix:
    """c_i^dag c_j + h.c."""
    term = jw_operator("create", i, n) @ jw_operator("annihilate", j, n)
    return term + term.T.conj()


def _hubbard_ring(t: float, u: float, n_sites: int, bonds) -> np.ndarray:
    n = 2 * n_sites
    h = sp.csr_matrix((2 ** n, 2 ** n))
    for a, b in bonds:
        for spin in (0, 1):
            h = h - t * _hop(2 * a + spin, 2 * b + spin, n)
    for s in range(n_sites):
        h = h + u * (mode_number(2 * s, n) @ mode_number(2 * s + 1, n))
    return h.toarray()


def hubbard_dimer_hamiltonian(t: float = 1.0, U: float = 0.0) -> np.ndarray:
    """-t sum_s (c_As^dag c_Bs + h.c.) + U sum_i n_i,up n_i,down on 4 modes."""
    return _hubbard_ring(t, U, 2, [(0, 1)])


def hubbard_trimer_hamiltonian(t: float = 1.0, beta: float = 0.0) -> np.ndarray:
    """-t sum_j,s (c_js^dag c_j+1,s + h.c.) + beta t sum_j n_j,up n_j,down, periodic."""
    return _hubbard_ring(t, beta * t, 3, [(0, 1), (1, 2), (2, 0)])


def alpha_from_interaction(U: float, t: float = 1.0) -> float:
    x = U / (4 * t)
    return float(x + np.sqrt(1 + x * x))


def interaction_from_alpha(alpha: float, t: float = 1.0) -> float:
    return float(4 * t * (alpha * alpha - 1) / (2 * alpha))


# dimer


def hubbard_dimer_ground(alpha: float) -> PureStateVector:
    if alpha < 1:
        raise ParameterRangeError(f"alpha must be >= 1, got {alpha}")
    amps = np.zeros(16, dtype=complex)
    amps[0b1100] = 1
    amps[0b0011] = 1
    amps[0b1001] = alpha
    amps[0b0110] = -alpha
    amps *= -1 / np.sqrt(2 * (1 + alpha * alpha))
    return PureStateVector((2,) * 4, amps)


SINGLETONS_4 = PartitionSpec.modes([(0,), (1,), (2,), (3,)], 4)
SITES_4 = PartitionSpec.modes([(0, 1), (2, 3)], 4)
MODE_VS_REST_4 = PartitionSpec.modes([(0,), (1, 2, 3)], 4)


def dimer_entanglements(alpha: float) -> DimerEntanglements:
    """Closed forms for the dimer ground state."""
    if alpha < 1:
        raise ParameterRangeError(f"alpha must be >= 1, got {alpha}")
    a2 = alpha * alpha
    e_g = 3 / (1 + a2) * np.sqrt(1 + (2 / 9) * a2 + a2 * a2) - 1
    e_s = 2 / (1 + a2) * np.sqrt(13 * a2 * a2 + 34 * a2 + 13) - 6
    e_vn = (np.log2(2 * (1 + a2)) - a2 * np.log2(a2 / (2 * (1 + a2)))) / (1 + a2)
    # the lone mode is maximally mixed for every alpha
    e_unequal = 4 * np.sqrt(3) - sep_norm((2, 8))
    return DimerEntanglements(float(e_g), float(e_s), float(e_vn), float(e_unequal))


def dimer_entanglements_generic(alpha: float) -> DimerEntanglements:
    """Same quantities from the correlation tensors of the ground state."""
    psi = hubbard_dimer_ground(alpha)
    rho_a = partial_trace(from_pure(psi), SITES_4, [0])
    return DimerEntanglements(
        E_g=geometric_entanglement(psi, SINGLETONS_4),
        E_s=geometric_entanglement(psi, SITES_4),
        E_vn=von_neumann_entropy(rho_a),
        E_unequal=geometric_entanglement(psi, MODE_VS_REST_4),
    )


# trimer

SINGLETONS_6 = PartitionSpec.modes([(m,) for m in range(6)], 6)
SITES_6 = PartitionSpec.modes([(0, 1), (2, 3), (4, 5)], 6)
SITE_VS_REST_6 = PartitionSpec.modes([(0, 1), (2, 3, 4, 5)], 6)


def _spin_half_block():
    sector = number_sector(6, 3)
    up = [s for s in sector.basis if sum(s.occupations[0::2]) == 2]
    return NumberSector(6, 3, tuple(up))


def trimer_spectrum(beta: float, t: float = 1.0) -> np.ndarray:
    """Eigenvalues of the trimer in the N=3, S_z=+1/2 block, ascending."""
    block = _spin_half_block()
    return np.linalg.eigvalsh(block.restrict(hubbard_trimer_hamiltonian(t, beta)))


def hubbard_trimer_ground(beta: float, t: float = 1.0, degeneracy_tol: float = 1e-9) -> PureStateVector:
    """
    A fixed representative of the degenerate trimer ground state.

    Works in the N=3, S_z=+1/2 block. The representative is the projection
    of the first block basis state with weight in the ground eigenspace; the
    largest amplitude (first on ties) is made real positive.
    """
    if beta < 0:
        raise ParameterRangeError(f"beta must be >= 0, got {beta}")
    block = _spin_half_block()
    h = block.restrict(hubbard_trimer_hamiltonian(t, beta))
    evals, vecs = np.linalg.eigh(h)
    tol = degeneracy_tol * max(np.linalg.norm(h, 2), 1.0)
    ground = vecs[:, evals < evals[0] + tol]
    logger.debug("trimer beta=%g: ground energy %.12g, degeneracy %d", beta, evals[0], ground.shape[1])

    projector = ground @ ground.conj().T
    weights = np.real(np.diag(projector))
    seed_index = int(np.flatnonzero(weights > 1e-8)[0])
    vec = projector[:, seed_index]
    vec = vec / np.linalg.norm(vec)
    mags = np.abs(vec)
    lead = int(np.flatnonzero(mags >= mags.max() - 1e-12)[0])
    vec = vec * (abs(vec[lead]) / vec[lead])
    return PureStateVector((2,) * 6, block.embed(vec))


def trimer_entanglements(beta: float, t: float = 1.0, degeneracy_tol: float = 1e-9) -> TrimerEntanglements:
    psi = hubbard_trimer_ground(beta, t, degeneracy_tol)
    rho_a = partial_trace(from_pure(psi), SITE_VS_REST_6, [0])
    return TrimerEntanglements(
        E_six=geometric_entanglement(psi, SINGLETONS_6),
        E_site3=geometric_entanglement(psi, SITES_6),
        E_bi_A_BC=geometric_entanglement(psi, SITE_VS_REST_6),
        E_vn_A_BC=von_neumann_entropy(rho_a),
    )


# upper bounds within a number sector


def maximize_partition_entanglement(sector: NumberSector, partition: PartitionSpec,
                                    restarts: int = 20, seed: int = 0, workers: int = 1,
                                    options: Optional[dict] = None) -> OptimizationReport:
    if partition.unit_dims != (2,) * sector.modes:
        raise PartitionError(f"partition does not cover {sector.modes} modes")
    if restarts < 1:
        raise ParameterRangeError("restarts must be >= 1")
    size = sector.size
    dims = partition.local_dims
    offset = sep_norm(partition)

    def amplitudes(x):
        amps = x[:size] + 1j * np.concatenate(([0.0], x[size:]))
        return amps / np.linalg.norm(amps)

    def objective(x):
        full = sector.embed(amplitudes(x))
        return correlation_norm_from_amplitudes(group_vector(full, partition), dims) - offset

    logger.info("maximizing E over %d modes, N=%d, partition %s: %d restarts, seed %d",
                sector.modes, sector.particles, partition.subsets, restarts, seed)
    result = multistart_maximize(
        objective,
        sphere_starts(2 * size - 1, restarts, seed),
        options=options or {"maxiter": 1000, "ftol": 1e-14, "gtol": 1e-10},
        workers=workers,
    )
    best = PureStateVector((2,) * sector.modes, sector.embed(amplitudes(result.x)))
    report = OptimizationReport.from_result(result, best, seed)
    if partition.n_parts == 2:
        report.extras["schmidt"] = schmidt_decompose(best, partition).coefficients
    logger.info("best E %.8g (converged=%s)", result.value, result.converged)
    return report


# four-mode example


def four_mode_state(alpha: float, beta: float) -> PureStateVector:
    """(i a|1100> + |1001> + |0110> + |0011> + b|0101> + |1010>)/sqrt(6), a^2 + b^2 = 2."""
    if abs(alpha * alpha + beta * beta - 2) > 1e-9:
        raise ParameterRangeError("alpha^2 + beta^2 must equal 2")
    amps = np.zeros(16, dtype=complex)
    amps[0b1100] = 1j * alpha
    amps[0b1001] = 1
    amps[0b0110] = 1
    amps[0b0011] = 1
    amps[0b0101] = beta
    amps[0b1010] = 1
    return PureStateVector((2,) * 4, amps / np.sqrt(6))


def four_mode_hamiltonian(params: FourModeParams) -> np.ndarray:
    """f(a1^dag a4 + h.c.) + q n1 n2 + Gamma n1 + gamma n3 + eta(a1^dag a2 + h.c.)."""
    n = 4
    h = (params.f * _hop(0, 3, n)
         + params.q * (mode_number(0, n) @ mode_number(1, n))
         + params.Gamma * mode_number(0, n)
         + params.gamma * mode_number(2, n)
         + params.eta * _hop(0, 1, n))
    return sp.csr_matrix(h).toarray()


def evolve_four_mode(psi: PureStateVector, params: FourModeParams, eps: float) -> PureStateVector:
    """First-order step psi - i eps H psi, renormalized."""
    if tuple(psi.dims) != (2,) * 4:
        raise PartitionError("four-mode evolution needs a 4-mode state")
    amps = psi.amplitudes - 1j * eps * (four_mode_hamiltonian(params) @ psi.amplitudes)
    return PureStateVector.normalized(psi.dims, amps)
