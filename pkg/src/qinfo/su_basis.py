"""
Generator bases of SU(d) and their structure constants.

Generators are stored in interleaved order
u_12, v_12, w_1, u_13, v_13, u_23, v_23, w_2, ...
so that the diagonal generator w_l sits at 1-based position (l+1)^2 - 1.
For d = 3 this is the usual Gell-Mann numbering.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidDimensionError, UnsupportedDimensionError

logger = logging.getLogger(__name__)

ORDERING_TAG = "interleaved-uvw"


@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    dim: int
    generators: np.ndarray
    ordering_tag: str = ORDERING_TAG

    def __len__(self) -> int:
        return self.generators.shape[0]

    def diagonal_index(self, l: int) -> int:
        """Zero-based position of w_l, 1 <= l <= d-1."""
        if not 1 <= l < self.dim:
            raise InvalidDimensionError(f"w_{l} does not exist for d={self.dim}")
        return (l + 1) ** 2 - 2

    @property
    def diagonal_indices(self) -> list[int]:
        return [self.diagonal_index(l) for l in range(1, self.dim)]


@dataclass(frozen=True, eq=False)
class StructureConstants:
    dim: int
    f: np.ndarray
    g: np.ndarray


def _symmetric(j: int, k: int, d: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=complex)
    m[j, k] = m[k, j] = 1
    return m


def _antisymmetric(j: int, k: int, d: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=complex)
    m[j, k] = -1j
    m[k, j] = 1j
    return m


def _diagonal(l: int, d: int) -> np.ndarray:
    diag = np.zeros(d)
    diag[:l] = 1
    diag[l] = -l
    return np.sqrt(2 / (l * (l + 1))) * np.diag(diag).astype(complex)


@lru_cache(maxsize=None)
def build_generators(d: int) -> GeneratorBasis:
    """Hermitian, traceless generators with Tr(l_i l_j) = 2 delta_ij."""
    if int(d) != d or d < 2:
        raise InvalidDimensionError(f"generator basis needs d >= 2, got {d}")
    d = int(d)
    mats = []
    for k in range(1, d):
        for j in range(k):
            mats.append(_symmetric(j, k, d))
            mats.append(_antisymmetric(j, k, d))
        mats.append(_diagonal(k, d))
    generators = np.array(mats)
    generators.setflags(write=False)
    return GeneratorBasis(dim=d, generators=generators)


def structure_constants(basis: GeneratorBasis) -> StructureConstants:
    """
    f_ijk = Tr([l_i, l_j] l_k) / 4i and g_ijk = Tr({l_i, l_j} l_k) / 4.

    Both follow from t_ijk = Tr(l_i l_j l_k): f = Im(t)/2, g = Re(t)/2.
    """
    return _structure_constants(basis.dim)


@lru_cache(maxsize=None)
def _structure_constants(d: int) -> StructureConstants:
    gens = build_generators(d).generators
    t = np.einsum("iab,jbc,kca->ijk", gens, gens, gens, optimize=True)
    f = np.ascontiguousarray(t.imag / 2)
    g = np.ascontiguousarray(t.real / 2)
    f.setflags(write=False)
    g.setflags(write=False)
    logger.debug("structure constants computed for d=%d", d)
    return StructureConstants(dim=d, f=f, g=g)


def star_product(a: np.ndarray, b: np.ndarray, sc: StructureConstants) -> np.ndarray:
    d = sc.dim
    if d == 2:
        raise UnsupportedDimensionError("star product is undefined for d=2")
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n = d * d - 1
    if a.shape != (n,) or b.shape != (n,):
        raise InvalidDimensionError(f"star product needs vectors of length {n}")
    scale = np.sqrt(d * (d - 1) / 2) / (d - 2)
    return scale * np.einsum("ijk,i,j->k", sc.g, a, b)
