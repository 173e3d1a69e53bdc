"""
Density matrices, pure states and their Bloch decomposition over a partition.

Conventions:
  - tensor-product basis ordered with the first unit slowest;
  - coherence vectors s = (d/2) Tr(rho l), correlation tensors
    t = (d_1...d_M / 2^M) Tr(rho l x ... x l);
  - subset combinations are enumerated lexicographically.
"""
import itertools
import logging
import string
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy.stats import unitary_group

from .errors import (
    InvalidDimensionError,
    NormalizationError,
    PartitionError,
    PositivityError,
    StateFormatError,
)
from .su_basis import StructureConstants, build_generators

logger = logging.getLogger(__name__)

VALIDATION_TOL = 1e-10
PURE_NORM_TOL = 1e-8
PARSE_TOL = 1e-8
MAX_TOTAL_DIM = 256

_LETTERS = string.ascii_letters


@dataclass(frozen=True)
class PartitionSpec:
    """Disjoint grouping of elementary units (modes or qudits) into subsystems."""
    subsets: tuple[tuple[int, ...], ...]
    unit_dims: tuple[int, ...]

    def __post_init__(self):
        subsets = tuple(tuple(int(u) for u in s) for s in self.subsets)
        unit_dims = tuple(int(d) for d in self.unit_dims)
        object.__setattr__(self, "subsets", subsets)
        object.__setattr__(self, "unit_dims", unit_dims)

        if not subsets or any(len(s) == 0 for s in subsets):
            raise PartitionError("partition subsets must be non-empty")
        if any(d < 2 for d in unit_dims):
            raise InvalidDimensionError(f"unit dimensions must be >= 2, got {unit_dims}")
        flat = [u for s in subsets for u in s]
        if len(set(flat)) != len(flat):
            raise PartitionError(f"subsets overlap: {subsets}")
        if sorted(flat) != list(range(len(unit_dims))):
            raise PartitionError(f"subsets {subsets} do not cover units 0..{len(unit_dims) - 1}")

    @classmethod
    def qudits(cls, dims: Sequence[int]) -> "PartitionSpec":
        return cls(tuple((k,) for k in range(len(dims))), tuple(dims))

    @classmethod
    def modes(cls, subsets: Sequence[Sequence[int]], n_modes: int) -> "PartitionSpec":
        return cls(tuple(tuple(s) for s in subsets), (2,) * n_modes)

    @classmethod
    def parse(cls, text: str, unit_dims: Sequence[int]) -> "PartitionSpec":
        """Parse the `0,1;2,3` syntax: groups separated by `;`, units by `,`."""
        try:
            subsets = [tuple(int(u) for u in group.split(",")) for group in text.split(";")]
        except ValueError as e:
            raise PartitionError(f"cannot parse partition '{text}': {e}")
        return cls(tuple(subsets), tuple(unit_dims))

    @property
    def n_parts(self) -> int:
        return len(self.subsets)

    @property
    def local_dims(self) -> tuple[int, ...]:
        return tuple(int(np.prod([self.unit_dims[u] for u in s])) for s in self.subsets)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.unit_dims))

    @property
    def order(self) -> list[int]:
        return [u for s in self.subsets for u in s]


@dataclass(frozen=True, eq=False)
class PureStateVector:
    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)
        if amps.size != int(np.prod(dims)):
            raise InvalidDimensionError(f"{amps.size} amplitudes do not match dims {dims}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > PURE_NORM_TOL:
            raise NormalizationError(f"state norm is {norm:.12g}, expected 1")
        object.__setattr__(self, "amplitudes", amps / norm)

    @classmethod
    def normalized(cls, dims: Sequence[int], amplitudes) -> "PureStateVector":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise NormalizationError("cannot normalize the zero vector")
        return cls(tuple(dims), amps / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dims: tuple[int, ...]
    data: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        data = np.asarray(self.data, dtype=complex)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "data", data)
        n = int(np.prod(dims))
        if data.shape != (n, n):
            raise InvalidDimensionError(f"matrix shape {data.shape} does not match dims {dims}")
        if n > MAX_TOTAL_DIM:
            raise InvalidDimensionError(f"total dimension {n} exceeds {MAX_TOTAL_DIM}")
        if np.max(np.abs(data - data.conj().T)) > VALIDATION_TOL:
            raise StateFormatError("density matrix is not Hermitian")
        if abs(np.trace(data) - 1) > VALIDATION_TOL:
            raise NormalizationError(f"trace is {np.trace(data).real:.12g}, expected 1")
        if np.linalg.eigvalsh(data).min() < -VALIDATION_TOL:
            raise PositivityError("density matrix has a negative eigenvalue")

    @property
    def dim(self) -> int:
        return self.data.shape[0]


@dataclass(frozen=True, eq=False)
class BlochDecomposition:
    partition: PartitionSpec
    coherence_vectors: tuple[np.ndarray, ...]
    correlation_tensors: dict[tuple[int, ...], np.ndarray]

    def tensor(self, *parts: int) -> np.ndarray:
        """Correlation tensor over the given subsets (two or more, ascending)."""
        return self.correlation_tensors[tuple(parts)]

    @property
    def top(self) -> np.ndarray:
        return self.correlation_tensors[tuple(range(self.partition.n_parts))]


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    coefficients: np.ndarray
    left: np.ndarray
    right: np.ndarray

    @property
    def weights(self) -> np.ndarray:
        return self.coefficients ** 2

    @property
    def rank(self) -> int:
        return self.coefficients.size


# array-level helpers, shared with the optimizers


def _check_partition(dims: Sequence[int], partition: PartitionSpec):
    if tuple(dims) != partition.unit_dims:
        raise PartitionError(f"partition over units {partition.unit_dims} does not match dims {tuple(dims)}")


def group_matrix(data: np.ndarray, partition: PartitionSpec) -> np.ndarray:
    """Reorder a matrix over unit dims so that each subset is contiguous, in subset order."""
    order = partition.order
    if order == list(range(len(order))):
        return data
    n = len(order)
    dims = partition.unit_dims
    t = data.reshape(dims + dims).transpose(order + [n + u for u in order])
    return t.reshape(data.shape)


def group_vector(amps: np.ndarray, partition: PartitionSpec) -> np.ndarray:
    order = partition.order
    if order == list(range(len(order))):
        return amps
    return amps.reshape(partition.unit_dims).transpose(order).reshape(-1)


def ungroup_vector(amps: np.ndarray, partition: PartitionSpec) -> np.ndarray:
    order = partition.order
    grouped_dims = [partition.unit_dims[u] for u in order]
    inverse = list(np.argsort(order))
    return amps.reshape(grouped_dims).transpose(inverse).reshape(-1)


def reduce_matrix(data: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Partial trace of a matrix over `dims`, keeping parts `keep` in the given order."""
    m = len(dims)
    rows = _LETTERS[:m]
    cols = list(_LETTERS[m:2 * m])
    for k in range(m):
        if k not in keep:
            cols[k] = rows[k]
    out = "".join(rows[k] for k in keep) + "".join(cols[k] for k in keep)
    t = np.einsum(f"{rows}{''.join(cols)}->{out}", data.reshape(tuple(dims) * 2))
    n = int(np.prod([dims[k] for k in keep]))
    return t.reshape(n, n)


def expectation_tensor(data: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    """Tr(rho l_a x l_b x ...) for every generator tuple, one generator per part."""
    m = len(dims)
    r = data.reshape(tuple(dims) * 2)
    for k in range(m):
        # axes now: rows k.., cols k.., generator indices 0..k-1
        rem = m - k
        gens = build_generators(dims[k]).generators
        r = np.tensordot(r, gens, axes=([0, rem], [2, 1]))
    return r.real


def correlation_tensor(data: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    scale = np.prod(dims) / 2 ** len(dims)
    return scale * expectation_tensor(data, dims)


def entropy_of_spectrum(evals: np.ndarray) -> float:
    evals = np.asarray(evals, dtype=float)
    if evals.min(initial=0.0) < -VALIDATION_TOL:
        raise PositivityError(f"eigenvalue {evals.min():.3g} below tolerance")
    p = evals[evals > 0]
    return float(-np.sum(p * np.log2(p)))


def _as_matrix(rho: Union["DensityMatrix", np.ndarray]) -> np.ndarray:
    return rho.data if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


# public operations


def from_pure(psi: PureStateVector) -> DensityMatrix:
    amps = psi.amplitudes
    norm = np.linalg.norm(amps)
    if abs(norm - 1) > PURE_NORM_TOL:
        raise NormalizationError(f"state norm is {norm:.12g}, expected 1")
    amps = amps / norm
    return DensityMatrix(psi.dims, np.outer(amps, amps.conj()))


def partial_trace(rho: DensityMatrix, partition: PartitionSpec, keep: Sequence[int]) -> DensityMatrix:
    _check_partition(rho.dims, partition)
    keep = list(keep)
    if not keep or len(set(keep)) != len(keep) or any(not 0 <= k < partition.n_parts for k in keep):
        raise PartitionError(f"invalid subset indices {keep} for {partition.n_parts} subsets")
    data = reduce_matrix(group_matrix(rho.data, partition), partition.local_dims, keep)
    data = (data + data.conj().T) / 2
    return DensityMatrix(tuple(partition.local_dims[k] for k in keep), data)


def bloch_decompose(rho: DensityMatrix, partition: PartitionSpec) -> BlochDecomposition:
    _check_partition(rho.dims, partition)
    dims = partition.local_dims
    grouped = group_matrix(rho.data, partition)
    m = len(dims)

    vectors = []
    for k in range(m):
        reduced = reduce_matrix(grouped, dims, [k])
        vectors.append(correlation_tensor(reduced, [dims[k]]))

    tensors = {}
    for size in range(2, m + 1):
        for subset in itertools.combinations(range(m), size):
            reduced = reduce_matrix(grouped, dims, subset)
            tensors[subset] = correlation_tensor(reduced, [dims[k] for k in subset])

    return BlochDecomposition(partition, tuple(vectors), tensors)


def _subset_operator(coeffs: np.ndarray, subset: Sequence[int], dims: Sequence[int]) -> np.ndarray:
    """sum t_{a..} l_a x ... on `subset`, identity elsewhere, over grouped dims."""
    m = len(dims)
    rows, cols, gens = _LETTERS[:m], _LETTERS[m:2 * m], _LETTERS[2 * m:3 * m]
    operands = [coeffs]
    terms = ["".join(gens[k] for k in subset)]
    for k in subset:
        operands.append(build_generators(dims[k]).generators)
        terms.append(gens[k] + rows[k] + cols[k])
    for k in range(m):
        if k not in subset:
            operands.append(np.eye(dims[k]))
            terms.append(rows[k] + cols[k])
    out = np.einsum(",".join(terms) + "->" + rows + cols, *operands, optimize=True)
    n = int(np.prod(dims))
    return out.reshape(n, n)


def reconstruct(bd: BlochDecomposition) -> np.ndarray:
    """rho = (1/D)[I + sum over subsets of t_S l_S], over the grouped local dims."""
    dims = bd.partition.local_dims
    total = int(np.prod(dims))
    rho = np.eye(total, dtype=complex)
    for k, s in enumerate(bd.coherence_vectors):
        rho += _subset_operator(s, (k,), dims)
    for subset, t in bd.correlation_tensors.items():
        rho += _subset_operator(t, subset, dims)
    return rho / total


def coherence_is_pure(s: np.ndarray, d: int, sc: StructureConstants, tol: float = 1e-8) -> bool:
    s = np.asarray(s, dtype=float)
    if s.shape != (d * d - 1,):
        raise InvalidDimensionError(f"coherence vector for d={d} must have length {d * d - 1}")
    if abs(np.linalg.norm(s) - np.sqrt(d * (d - 1) / 2)) > tol:
        return False
    contracted = np.einsum("ijk,i,j->k", sc.g, s, s)
    return bool(np.max(np.abs(contracted - (d - 2) * s)) <= tol)


def von_neumann_entropy(rho: Union[DensityMatrix, np.ndarray]) -> float:
    return entropy_of_spectrum(np.linalg.eigvalsh(_as_matrix(rho)))


def schmidt_decompose(psi: PureStateVector, partition: PartitionSpec, tol: float = 1e-12) -> SchmidtDecomposition:
    """Amplitude coefficients in descending order; `weights` gives their squares."""
    if partition.n_parts != 2:
        raise PartitionError("Schmidt decomposition needs a bipartite partition")
    _check_partition(psi.dims, partition)
    d_a, d_b = partition.local_dims
    mat = group_vector(psi.amplitudes, partition).reshape(d_a, d_b)
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    keep = s > tol * max(s[0], 1.0)
    s, u, vh = s[keep], u[:, keep], vh[keep, :]

    left = u.T.copy()
    right = vh.copy()
    for k in range(s.size):
        first = np.flatnonzero(np.abs(left[k]) > tol)[0]
        phase = left[k, first] / abs(left[k, first])
        left[k] *= phase.conjugate()
        right[k] *= phase
    return SchmidtDecomposition(coefficients=s, left=left, right=right)


def mutual_information(rho: DensityMatrix, partition: PartitionSpec) -> float:
    if partition.n_parts != 2:
        raise PartitionError("mutual information needs a bipartite partition")
    rho_a = partial_trace(rho, partition, [0])
    rho_b = partial_trace(rho, partition, [1])
    return von_neumann_entropy(rho_a) + von_neumann_entropy(rho_b) - von_neumann_entropy(rho)


# text format


def parse_density_matrix(text: str) -> DensityMatrix:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith("dims"):
        raise StateFormatError("first line must be 'dims d1 d2 ...'")
    try:
        dims = tuple(int(x) for x in lines[0].split()[1:])
    except ValueError:
        raise StateFormatError(f"bad dims line: {lines[0]}")
    if not dims or any(d < 2 for d in dims):
        raise StateFormatError(f"invalid dims {dims}")
    n = int(np.prod(dims))
    if len(lines) - 1 != n:
        raise StateFormatError(f"expected {n} matrix rows, found {len(lines) - 1}")
    try:
        data = np.array([[complex(tok) for tok in line.split()] for line in lines[1:]])
    except ValueError as e:
        raise StateFormatError(f"bad matrix entry: {e}")
    if data.shape != (n, n):
        raise StateFormatError(f"matrix rows must have {n} entries")
    if np.max(np.abs(data - data.conj().T)) > PARSE_TOL:
        raise StateFormatError("matrix is not Hermitian")
    if abs(np.trace(data) - 1) > PARSE_TOL:
        raise StateFormatError("matrix trace differs from 1")
    data = (data + data.conj().T) / 2
    return DensityMatrix(dims, data / np.trace(data).real)


def format_density_matrix(rho: DensityMatrix) -> str:
    lines = ["dims " + " ".join(str(d) for d in rho.dims)]
    for row in rho.data:
        lines.append(" ".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row))
    return "\n".join(lines) + "\n"


# sampling


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    return unitary_group.rvs(d, random_state=rng)


def random_pure_state(dims: Sequence[int], rng: np.random.Generator) -> PureStateVector:
    n = int(np.prod(dims))
    amps = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return PureStateVector.normalized(tuple(dims), amps)


def random_density_matrix(dims: Sequence[int], rng: np.random.Generator,
                          rank: Optional[int] = None) -> DensityMatrix:
    n = int(np.prod(dims))
    rank = rank or n
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    rho = g @ g.conj().T
    return DensityMatrix(tuple(dims), rho / np.trace(rho).real)


def apply_local_unitary(psi: PureStateVector, partition: PartitionSpec, part: int,
                        unitary: np.ndarray) -> PureStateVector:
    """Apply `unitary` to subset `part` of the partition."""
    _check_partition(psi.dims, partition)
    dims = partition.local_dims
    t = group_vector(psi.amplitudes, partition).reshape(dims)
    t = np.moveaxis(np.tensordot(unitary, t, axes=([1], [part])), 0, part)
    return PureStateVector(psi.dims, ungroup_vector(t.reshape(-1), partition))


def product_state(vectors: Iterable[np.ndarray]) -> PureStateVector:
    vectors = [np.asarray(v, dtype=complex) for v in vectors]
    amps = vectors[0]
    for v in vectors[1:]:
        amps = np.kron(amps, v)
    return PureStateVector.normalized(tuple(v.size for v in vectors), amps)
