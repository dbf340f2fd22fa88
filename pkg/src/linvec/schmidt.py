"""
Operator and state Schmidt decompositions.

An operator M on H₁⊗H₂ is realigned so that its Kronecker structure becomes
ordinary matrix rank; the SVD of the realigned matrix gives
M = Σ σᵢ Lᵢ ⊗ Rᵢ with orthonormal Lᵢ, Rᵢ.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.core.morphisms import Morphism
from src.errors import NormalizationError, ShapeError, UndefinedMeasureError
from src.linvec import kernel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SchmidtDecomposition:
    coefficients: np.ndarray
    left_factors: Tuple[np.ndarray, ...]
    right_factors: Tuple[np.ndarray, ...]
    rank: int
    split: Tuple[int, ...]

    def reconstruct(self) -> np.ndarray:
        if self.rank == 0:
            shape = _reconstructed_shape(self.split)
            return np.zeros(shape, dtype=np.complex128)
        return sum(s * np.kron(l, r) for s, l, r in
                   zip(self.coefficients, self.left_factors, self.right_factors))

    def norm_squared(self) -> float:
        return float(np.sum(self.coefficients ** 2))


def _reconstructed_shape(split):
    if len(split) == 2:
        return (split[0] * split[1],)
    d1, d2, d1p, d2p = split
    return (d1p * d2p, d1 * d2)


def _matrix(m) -> np.ndarray:
    return m.matrix if isinstance(m, Morphism) else kernel.as_complex_matrix(m)


def operator_schmidt(m, split: kernel.Split) -> SchmidtDecomposition:
    """split = (d₁, d₂, d₁′, d₂′): M maps H₁⊗H₂ (dims d₁, d₂) to H₁′⊗H₂′."""
    d1, d2, d1p, d2p = split
    r = kernel.realign(_matrix(m), split)
    u, s, v = kernel.svd(r)
    rank = kernel.numerical_rank(s)
    left = tuple(u[:, i].reshape(d1p, d1) for i in range(rank))
    right = tuple(np.conj(v[:, i]).reshape(d2p, d2) for i in range(rank))
    logger.debug(f"operator Schmidt rank {rank} for split {tuple(split)}")
    return SchmidtDecomposition(np.array(s[:rank]), left, right, rank, tuple(split))


def coupling_measure(m, split: kernel.Split) -> float:
    """1 − σ₁²/Σσᵢ²; zero exactly for a single tensor product."""
    sd = operator_schmidt(m, split)
    if sd.rank == 0:
        raise UndefinedMeasureError("coupling is undefined for the zero operator")
    squares = sd.coefficients ** 2
    return float(min(1.0, max(0.0, 1.0 - squares[0] / squares.sum())))


def state_schmidt(v, split: Tuple[int, int]) -> SchmidtDecomposition:
    d1, d2 = split
    vec = np.asarray(v, dtype=np.complex128).reshape(-1)
    if vec.shape[0] != d1 * d2:
        raise ShapeError(f"state of length {vec.shape[0]} does not split as {d1}×{d2}")
    u, s, w = kernel.svd(vec.reshape(d1, d2))
    rank = kernel.numerical_rank(s)
    left = tuple(u[:, i].copy() for i in range(rank))
    right = tuple(np.conj(w[:, i]) for i in range(rank))
    return SchmidtDecomposition(np.array(s[:rank]), left, right, rank, (d1, d2))


def is_entangled(v, split: Tuple[int, int], tolerance: float = 1e-9) -> bool:
    vec = np.asarray(v, dtype=np.complex128).reshape(-1)
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > tolerance:
        raise NormalizationError(f"state has norm {norm:.12g}, expected 1")
    return state_schmidt(vec, split).rank >= 2
