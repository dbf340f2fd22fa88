import numpy as np

SQRT_HALF = 1.0 / np.sqrt(2.0)


def basis(dim: int, k: int) -> np.ndarray:
    v = np.zeros(dim, dtype=np.complex128)
    v[k] = 1.0
    return v


def pauli_x() -> np.ndarray:
    return np.array([[0, 1], [1, 0]], dtype=np.complex128)


def hadamard() -> np.ndarray:
    return SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=np.complex128)


def swap(dim: int = 2) -> np.ndarray:
    """|i⟩⊗|j⟩ ↦ |j⟩⊗|i⟩ on dim⊗dim."""
    out = np.zeros((dim * dim, dim * dim), dtype=np.complex128)
    for i in range(dim):
        for j in range(dim):
            out[j * dim + i, i * dim + j] = 1.0
    return out


def cnot() -> np.ndarray:
    """|0⟩⟨0|⊗I + |1⟩⟨1|⊗X, control on the left factor."""
    p0 = np.diag([1, 0]).astype(np.complex128)
    p1 = np.diag([0, 1]).astype(np.complex128)
    return np.kron(p0, np.eye(2)) + np.kron(p1, pauli_x())


def bell_state() -> np.ndarray:
    zero, one = basis(2, 0), basis(2, 1)
    return SQRT_HALF * (np.kron(zero, zero) + np.kron(one, one))
