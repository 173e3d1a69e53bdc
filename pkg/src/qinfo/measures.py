import logging
from typing import Union

import numpy as np

from .errors import InvalidDimensionError, ParameterRangeError, PartitionError
from .qstate import (
    DensityMatrix,
    PartitionSpec,
    PureStateVector,
    correlation_tensor,
    group_vector,
)

logger = logging.getLogger(__name__)

_SIGMA_YY = np.fliplr(np.diag([-1.0, 1.0, 1.0, -1.0])).astype(complex)


def sep_norm(partition: Union[PartitionSpec, tuple]) -> float:
    """Norm of the top correlation tensor for a fully product state."""
    dims = partition.local_dims if isinstance(partition, PartitionSpec) else tuple(partition)
    if len(dims) < 2:
        raise PartitionError("need at least two subsystems")
    return float(np.prod([np.sqrt(d * (d - 1) / 2) for d in dims]))


def correlation_norm_from_amplitudes(amps: np.ndarray, dims: tuple[int, ...]) -> float:
    """||T|| for a pure state whose amplitudes are already grouped over `dims`."""
    rho = np.outer(amps, amps.conj())
    return float(np.linalg.norm(correlation_tensor(rho, dims)))


def correlation_norm(psi: PureStateVector, partition: PartitionSpec) -> float:
    if tuple(psi.dims) != partition.unit_dims:
        raise PartitionError(f"partition over {partition.unit_dims} does not match dims {psi.dims}")
    return correlation_norm_from_amplitudes(group_vector(psi.amplitudes, partition), partition.local_dims)


def geometric_entanglement(psi: PureStateVector, partition: PartitionSpec) -> float:
    """E = ||T|| - ||T||_sep; negative values are returned unchanged."""
    if partition.n_parts < 2:
        raise PartitionError("geometric entanglement needs at least two subsystems")
    value = correlation_norm(psi, partition) - sep_norm(partition)
    if value < -1e-9:
        logger.warning("negative geometric entanglement %.3g for partition %s", value, partition.subsets)
    return value


def concurrence(rho: Union[DensityMatrix, np.ndarray]) -> float:
    if isinstance(rho, DensityMatrix):
        if rho.dims != (2, 2):
            raise InvalidDimensionError(f"concurrence needs a two-qubit state, got dims {rho.dims}")
        data = rho.data
    else:
        data = np.asarray(rho, dtype=complex)
        if data.shape != (4, 4):
            raise InvalidDimensionError("concurrence needs a 4x4 matrix")
    flipped = _SIGMA_YY @ data.conj() @ _SIGMA_YY
    evals = np.linalg.eigvals(data @ flipped).real
    lam = np.sort(np.sqrt(np.clip(evals, 0, None)))[::-1]
    return float(max(lam[0] - lam[1] - lam[2] - lam[3], 0.0))


def binary_entropy(x: float) -> float:
    x = float(np.clip(x, 0.0, 1.0))
    if x in (0.0, 1.0):
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def eof_from_concurrence(c: float) -> float:
    if not -1e-12 <= c <= 1 + 1e-12:
        raise ParameterRangeError(f"concurrence must lie in [0, 1], got {c}")
    c = min(max(c, 0.0), 1.0)
    return binary_entropy((1 + np.sqrt(1 - c * c)) / 2)


def three_tangle(psi: PureStateVector) -> float:
    """Coffman-Kundu-Wootters residual tangle of a three-qubit pure state."""
    if tuple(psi.dims) != (2, 2, 2):
        raise InvalidDimensionError("three-tangle needs a three-qubit state")
    a = psi.amplitudes.reshape(2, 2, 2)
    d1 = (a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2 + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
          + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2 + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2)
    d2 = (a[0, 0, 0] * a[1, 1, 1] * a[0, 1, 1] * a[1, 0, 0]
          + a[0, 0, 0] * a[1, 1, 1] * a[1, 0, 1] * a[0, 1, 0]
          + a[0, 0, 0] * a[1, 1, 1] * a[1, 1, 0] * a[0, 0, 1]
          + a[0, 1, 1] * a[1, 0, 0] * a[1, 0, 1] * a[0, 1, 0]
          + a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 0] * a[0, 0, 1]
          + a[1, 0, 1] * a[0, 1, 0] * a[1, 1, 0] * a[0, 0, 1])
    d3 = (a[0, 0, 0] * a[1, 1, 0] * a[1, 0, 1] * a[0, 1, 1]
          + a[1, 1, 1] * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0])
    return float(4 * abs(d1 - 2 * d2 + 4 * d3))
