import numpy as np
from scipy import constants
from scipy.special import kl_div

from common import DomainError, UsageError, print_warning

EIGENVALUE_FLOOR = 1e-300
SUPPORT_TOLERANCE = 1e-14
METRICS = ("trace_distance", "relative_entropy")


def _same_shape(rho_a: np.ndarray, rho_b: np.ndarray):
    rho_a = np.asarray(rho_a, dtype=complex)
    rho_b = np.asarray(rho_b, dtype=complex)
    if rho_a.shape != rho_b.shape:
        raise UsageError(f"Shape mismatch: {rho_a.shape} vs {rho_b.shape}")
    return rho_a, rho_b


def trace_distance(rho_a: np.ndarray, rho_b: np.ndarray) -> float:
    """Half the trace norm of the difference."""
    rho_a, rho_b = _same_shape(rho_a, rho_b)
    difference = rho_a - rho_b
    if np.allclose(difference, difference.conj().T, rtol=0.0, atol=1e-15):
        values = np.abs(np.linalg.eigvalsh(0.5 * (difference + difference.conj().T)))
    else:
        values = np.linalg.svd(difference, compute_uv=False)
    return float(0.5 * np.sum(np.sort(values)))


def _clipped_spectrum(rho: np.ndarray, name: str):
    values, vectors = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    if np.any(values < EIGENVALUE_FLOOR):
        print_warning(
            f"Clipping {np.sum(values < EIGENVALUE_FLOOR)} eigenvalue(s) of {name} "
            f"at {EIGENVALUE_FLOOR:.0e} (lowest {np.min(values):.3e})"
        )
    return np.clip(values, EIGENVALUE_FLOOR, None), vectors


def relative_entropy(rho_a: np.ndarray, rho_b: np.ndarray) -> float:
    """
    d(A||B) = tr[A (log A - log B)] >= 0 from the eigendecompositions of both states.

    Summed as sum_ij Q_ij kl(a_i, b_j) with Q_ij = |<a_i|b_j>|^2, every term of
    which is nonnegative.
    """
    rho_a, rho_b = _same_shape(rho_a, rho_b)
    values_b, vectors_b = np.linalg.eigh(0.5 * (rho_b + rho_b.conj().T))
    values_a, vectors_a = _clipped_spectrum(rho_a, "the first state")
    weights = np.abs(vectors_a.conj().T @ vectors_b) ** 2
    mass_on_b = values_a @ weights
    singular = values_b <= SUPPORT_TOLERANCE
    if np.any(singular & (mass_on_b > SUPPORT_TOLERANCE)):
        raise DomainError("Reference state is singular on the support of the first state")
    values_b = np.clip(values_b, EIGENVALUE_FLOOR, None)
    terms = weights * kl_div(values_a[:, None], values_b[None, :])
    return float(np.sum(terms[:, ~singular]))


def free_energy_gap(rho: np.ndarray, rho_th: np.ndarray, temperature: float) -> float:
    """Nonequilibrium free-energy excess k_B T d(rho||rho_th), in joules."""
    if not temperature > 0:
        raise DomainError(f"Temperature must be positive, got {temperature}")
    return constants.k * temperature * relative_entropy(rho, rho_th)


def metric_function(metric: str):
    if metric == "trace_distance":
        return trace_distance
    if metric == "relative_entropy":
        return relative_entropy
    raise UsageError(f"Unknown metric: {metric}, expected one of {METRICS}")
