"""
Column-stacking vectorization of 4x4 operators.

    vec(A X B) = (B^T kron A) vec(X)
    vec(A X)   = (1 kron A) vec(X)
    vec(X B)   = (B^T kron 1) vec(X)

Element (row, col) of X lands at index row + dim * col.
"""

import numpy as np

DIM = 4


def vectorize(matrix: np.ndarray) -> np.ndarray:
    return np.asarray(matrix, dtype=complex).reshape(-1, order="F")


def unvectorize(vector: np.ndarray, dim: int = DIM) -> np.ndarray:
    return np.asarray(vector, dtype=complex).reshape((dim, dim), order="F")


def vector_index(row: int, col: int, dim: int = DIM) -> int:
    return row + dim * col


def left_multiplication(a: np.ndarray) -> np.ndarray:
    return np.kron(np.eye(a.shape[0]), a)


def right_multiplication(b: np.ndarray) -> np.ndarray:
    return np.kron(b.T, np.eye(b.shape[0]))


def sandwich(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> A rho B."""
    return np.kron(b.T, a)


def commutator_superoperator(h: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> -i [H, rho]."""
    return -1j * (left_multiplication(h) - right_multiplication(h))


def dissipator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> A rho B - {BA, rho}/2."""
    ba = b @ a
    return sandwich(a, b) - 0.5 * (left_multiplication(ba) + right_multiplication(ba))


def apply_superoperator(superoperator: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    dim = np.asarray(matrix).shape[0]
    return unvectorize(superoperator @ vectorize(matrix), dim)
