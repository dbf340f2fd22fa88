"""
Numerical kernel: one-sided Jacobi SVD for complex matrices, realignment,
inversion and linear solves.

The SVD orthogonalizes the columns of W = A·V by plane rotations until every
pair is orthogonal to working precision; singular values are the column norms.
Deterministic for a fixed input.
"""

import logging
from typing import Sequence, Tuple

import numpy as np

from src.config import settings
from src.errors import ShapeError, SingularityError

logger = logging.getLogger(__name__)

Split = Tuple[int, int, int, int]


def as_complex_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got {a.ndim} dimension(s)")
    if not np.all(np.isfinite(a)):
        raise ShapeError("matrix has non-finite entries")
    return a


def _completion(columns: np.ndarray, rows: int, total: int) -> np.ndarray:
    """Extend orthonormal columns to `total` orthonormal columns using unit vectors."""
    basis = [columns[:, j] for j in range(columns.shape[1])]
    for i in range(rows):
        if len(basis) >= total:
            break
        v = np.zeros(rows, dtype=np.complex128)
        v[i] = 1.0
        for _ in range(2):
            for b in basis:
                v = v - b * np.vdot(b, v)
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            basis.append(v / norm)
    if not basis:
        return np.zeros((rows, 0), dtype=np.complex128)
    return np.stack(basis, axis=1)


def _jacobi_tall(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Rotate the columns of a (rows ≥ cols) to mutual orthogonality; returns (W, V)."""
    w = a.copy()
    n = w.shape[1]
    v = np.eye(n, dtype=np.complex128)
    eps = settings.svd_eps

    for sweep in range(settings.svd_max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = np.vdot(w[:, p], w[:, p]).real
                beta = np.vdot(w[:, q], w[:, q]).real
                gamma = np.vdot(w[:, p], w[:, q])
                g = abs(gamma)
                if g == 0.0 or g <= eps * np.sqrt(alpha * beta):
                    continue
                rotated = True
                phase = np.conj(gamma / g)
                zeta = (beta - alpha) / (2.0 * g)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                rot = np.array([[c, s], [-s * phase, c * phase]], dtype=np.complex128)
                w[:, [p, q]] = w[:, [p, q]] @ rot
                v[:, [p, q]] = v[:, [p, q]] @ rot
        if not rotated:
            logger.debug(f"jacobi converged after {sweep + 1} sweep(s) on {a.shape}")
            break
    else:
        logger.warning(f"jacobi SVD hit {settings.svd_max_sweeps} sweeps on {a.shape} without converging")
    return w, v


def svd(m, full: bool = False) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    M = U·diag(S)·V† with S descending.

    Thin factors by default (k = min(rows, cols) columns); full=True completes
    U and V to square unitaries. Dimension-0 inputs give empty factors.
    """
    a = as_complex_matrix(m)
    rows, cols = a.shape
    if rows < cols:
        u, s, v = svd(a.conj().T, full=full)
        return v, s, u

    k = cols
    if k == 0:
        u = np.eye(rows, dtype=np.complex128)
        return (u if full else u[:, :0]), np.zeros(0), np.zeros((0, 0), dtype=np.complex128)

    w, v = _jacobi_tall(a)
    sigma = np.linalg.norm(w, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma, w, v = sigma[order], w[:, order], v[:, order]

    live = sigma > sigma[0] * 1e-13 if sigma[0] > 0 else np.zeros(k, dtype=bool)
    u = np.zeros((rows, k), dtype=np.complex128)
    u[:, live] = w[:, live] / sigma[live]
    if not live.all():
        completed = _completion(u[:, live], rows, k)
        u[:, ~live] = completed[:, int(live.sum()):k]
    if full:
        u = _completion(u, rows, rows)
    return u, sigma, v


def numerical_rank(sigma: Sequence[float], rtol: float = None) -> int:
    """Count of σᵢ > rtol·(1+σ₁)."""
    rtol = settings.rank_rtol if rtol is None else rtol
    sigma = np.asarray(sigma, dtype=float)
    if sigma.size == 0:
        return 0
    return int(np.sum(sigma > rtol * (1.0 + sigma[0])))


def realign(m, split: Split) -> np.ndarray:
    """
    R[(i,j),(k,l)] = M[(i,k),(j,l)] for M of shape (d₁′d₂′) × (d₁d₂).

    split = (d₁, d₂, d₁′, d₂′); the result has shape (d₁′d₁) × (d₂′d₂).
    """
    a = as_complex_matrix(m)
    d1, d2, d1p, d2p = split
    if a.shape != (d1p * d2p, d1 * d2):
        raise ShapeError(
            f"matrix of shape {a.shape} does not match split {tuple(split)} "
            f"(expected {(d1p * d2p, d1 * d2)})"
        )
    return a.reshape(d1p, d2p, d1, d2).transpose(0, 2, 1, 3).reshape(d1p * d1, d2p * d2)


def invert(m) -> np.ndarray:
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"only square matrices are invertible, got {a.shape}")
    if a.shape[0] == 0:
        return a.copy()
    u, s, v = svd(a)
    if s[0] == 0.0 or s[-1] <= settings.singular_rtol * s[0]:
        raise SingularityError(f"matrix is numerically singular (σ_min = {s[-1]:.3e})", sigma_min=float(s[-1]))
    return (v / s) @ u.conj().T


def solve(m, b) -> np.ndarray:
    """x with M·x = b."""
    a = as_complex_matrix(m)
    rhs = np.asarray(b, dtype=np.complex128)
    if rhs.ndim != 1 or rhs.shape[0] != a.shape[0]:
        raise ShapeError(f"right-hand side of length {rhs.shape} does not match matrix {a.shape}")
    return invert(a) @ rhs
