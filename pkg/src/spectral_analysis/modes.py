from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from common import NumericalError, UsageError, print_warning

STATIONARY_TOLERANCE = 1e-10
DEGENERACY_TOLERANCE = 1e-8
MAX_CONDITION_NUMBER = 1e10


@dataclass(frozen=True, eq=False)
class ModeDecomposition:
    """
    Biorthonormal spectrum of a generator, sorted by descending real part.

    right_vectors[n] is v_n and left_vectors[n] is w_n, with w_m . v_n = delta_mn.
    """

    eigenvalues: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray
    stationary_index: Optional[int]
    rate_scale: float
    zero_modes: int
    degenerate: bool
    condition_number: float

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    @property
    def slowest_index(self) -> Optional[int]:
        for index in range(self.dim):
            if index != self.stationary_index:
                return index
        return None

    def stationary_state(self) -> np.ndarray:
        """Stationary vector normalized to unit trace."""
        if self.stationary_index is None:
            raise NumericalError("Generator has no stationary mode")
        vector = self.right_vectors[self.stationary_index]
        if self.dim == 16:
            weights = np.eye(4).reshape(-1, order="F")
        else:
            weights = np.zeros(self.dim)
            weights[: min(self.dim, 4)] = 1.0
        norm = weights @ vector
        if abs(norm) == 0:
            raise NumericalError("Stationary mode has zero trace")
        return vector / norm


def _normalize_columns(vectors: np.ndarray) -> np.ndarray:
    normalized = vectors / np.linalg.norm(vectors, axis=0)
    for col in range(normalized.shape[1]):
        column = normalized[:, col]
        significant = np.flatnonzero(np.abs(column) > 1e-8 * np.max(np.abs(column)))
        pivot = column[significant[0]]
        normalized[:, col] = column * (np.conj(pivot) / abs(pivot))
    return normalized


def eigendecompose(G: np.ndarray, rate_scale: float = None) -> ModeDecomposition:
    """
    Dense non-Hermitian eigendecomposition with left vectors from the inverse
    of the right-vector matrix.

    rate_scale sets the tolerances (defaults to the spectral norm of G).
    """
    G = np.asarray(G, dtype=complex)
    if G.ndim != 2 or G.shape[0] != G.shape[1] or G.shape[0] > 16:
        raise UsageError(f"Expected a square generator of size <= 16, got {G.shape}")
    if not np.all(np.isfinite(G)):
        raise NumericalError("Generator contains non-finite entries")
    try:
        eigenvalues, right = scipy.linalg.eig(G)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericalError(f"Eigensolver failed on {G.shape} generator: {e}")

    order = np.lexsort((eigenvalues.imag, -eigenvalues.real))
    eigenvalues = eigenvalues[order]
    right = _normalize_columns(right[:, order])

    if rate_scale is None:
        rate_scale = float(np.linalg.norm(G, 2))
    if rate_scale == 0:
        rate_scale = 1.0

    condition_number = float(np.linalg.cond(right))
    degenerate = condition_number > MAX_CONDITION_NUMBER
    try:
        left = np.linalg.inv(right)
    except np.linalg.LinAlgError:
        left = np.linalg.pinv(right)
        degenerate = True

    gaps = np.abs(eigenvalues[:, None] - eigenvalues[None, :])
    np.fill_diagonal(gaps, np.inf)
    if gaps.size and np.min(gaps) < DEGENERACY_TOLERANCE * rate_scale:
        degenerate = True

    zero = np.flatnonzero(np.abs(eigenvalues) <= STATIONARY_TOLERANCE * rate_scale)
    stationary_index = int(zero[0]) if len(zero) else None

    if degenerate:
        print_warning(
            f"Near-degenerate or defective spectrum (condition number {condition_number:.2e}), "
            "mode-based propagation is disabled"
        )

    return ModeDecomposition(
        eigenvalues=eigenvalues,
        right_vectors=right.T.copy(),
        left_vectors=left,
        stationary_index=stationary_index,
        rate_scale=rate_scale,
        zero_modes=len(zero),
        degenerate=degenerate,
        condition_number=condition_number,
    )


def overlaps(md: ModeDecomposition, p0: np.ndarray) -> np.ndarray:
    """Mode amplitudes a_n = w_n . p(0)."""
    p0 = np.asarray(p0)
    if p0.shape != (md.dim,):
        raise UsageError(
            f"Vector of shape {p0.shape} does not match a {md.dim}-mode decomposition"
        )
    return md.left_vectors @ p0


def mode_contributions(md: ModeDecomposition, p0: np.ndarray, times) -> np.ndarray:
    """a_n exp(lambda_n t) v_n, shaped (time, mode, component)."""
    amplitudes = overlaps(md, p0)
    decay = np.exp(np.outer(np.asarray(times, dtype=float), md.eigenvalues))
    return (decay * amplitudes)[:, :, None] * md.right_vectors[None, :, :]


def stationary_density(L: np.ndarray) -> np.ndarray:
    """Unit-trace null vector of a 16x16 generator, as a 4x4 matrix."""
    L = np.asarray(L, dtype=complex)
    if L.shape != (16, 16):
        raise UsageError(f"Expected a 16x16 generator, got shape {L.shape}")
    _, singular_values, vh = scipy.linalg.svd(L)
    vector = vh[-1].conj()
    rho = vector.reshape((4, 4), order="F")
    trace = np.trace(rho)
    if abs(trace) == 0:
        raise NumericalError("Null vector of the generator is traceless")
    rho = rho / trace
    return 0.5 * (rho + rho.conj().T)
