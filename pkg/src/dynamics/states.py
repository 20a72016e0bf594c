from dataclasses import replace
from typing import List

import numpy as np
from scipy.linalg import expm

from common import DomainError, NumericalError, UsageError
from spin_algebra import (
    ATOL,
    coherence_order_matrix,
    conjugate,
    identity,
    rotation_pulse,
    spin_operator,
    total_z,
)
from relaxation_model import SystemParams, hamiltonian, thermal_state


def validate_density_matrix(
    rho: np.ndarray, atol: float = ATOL, name: str = "state"
) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise UsageError(f"{name} must be 4x4, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise NumericalError(f"{name} contains non-finite entries")
    if not np.allclose(rho, rho.conj().T, rtol=0.0, atol=atol):
        raise DomainError(f"{name} is not Hermitian")
    trace = np.trace(rho)
    if abs(trace - 1) > atol:
        raise DomainError(f"{name} has trace {trace.real:.15g}, expected 1")
    lowest = np.min(np.linalg.eigvalsh(rho))
    if lowest < -atol:
        raise DomainError(f"{name} is not positive, lowest eigenvalue {lowest:.3e}")
    return rho


def populations(rho: np.ndarray) -> np.ndarray:
    return np.real(np.diagonal(rho, axis1=-2, axis2=-1)).copy()


def density_from_populations(p) -> np.ndarray:
    return np.diag(np.asarray(p, dtype=complex))


def _check_theta(theta: float) -> None:
    if not 0 < theta < np.pi / 2:
        raise DomainError(f"theta must lie in (0, pi/2), got {theta}")


def preparation_sequence(
    theta: float,
    p: SystemParams,
    include_j: bool = False,
    coupling: str = "ising",
) -> List[np.ndarray]:
    """
    States of the preparation sequence, starting from thermal equilibrium:

        (theta)_y on both spins -> delay pi/Delta -> (theta)_-x on both spins

    The delay turns the two spins by -90 and +90 degrees about z. J is
    neglected during the delay unless include_j is set.
    """
    _check_theta(theta)
    if not p.delta_offset > 0:
        raise DomainError(
            f"Preparation needs a positive resonance offset, got {p.delta_offset}"
        )
    delay = np.pi / p.delta_offset
    free = p if include_j else replace(p, j_coupling=0.0)
    evolution = expm(-1j * delay * hamiltonian(free, "interaction", coupling))

    thermal = thermal_state(p)
    tipped = conjugate(rotation_pulse(theta, "y", "both"), thermal)
    delayed = conjugate(evolution, tipped)
    final = conjugate(rotation_pulse(theta, "-x", "both"), delayed)
    return [thermal, tipped, delayed, final]


def prepare_theta_state(
    theta: float, p: SystemParams, include_j: bool = False, coupling: str = "ising"
) -> np.ndarray:
    return preparation_sequence(theta, p, include_j, coupling)[-1]


def pfg_dephase(rho: np.ndarray, zero_zq_coherences: bool = False) -> np.ndarray:
    """Keep only the zero-quantum part; optionally drop the |01><10| pair too."""
    rho = np.asarray(rho, dtype=complex)
    kept = np.where(coherence_order_matrix() == 0, rho, 0)
    if zero_zq_coherences:
        kept[1, 2] = 0
        kept[2, 1] = 0
    return kept


def near_state(
    theta: float,
    p: SystemParams,
    include_j: bool = False,
    zero_zq_coherences: bool = False,
) -> np.ndarray:
    """rho_n(theta) = 1/4 + (epsilon/2)(I1z + cos(2 theta) I2z)."""
    return pfg_dephase(prepare_theta_state(theta, p, include_j), zero_zq_coherences)


def far_state(p: SystemParams) -> np.ndarray:
    return identity() / 4 - 0.5 * p.epsilon * total_z()


def near_state_genuine(p: SystemParams) -> np.ndarray:
    return identity() / 4 + 0.5 * p.epsilon * (
        spin_operator(1, "z") - spin_operator(2, "z")
    )


def far_state_by_pulse(p: SystemParams) -> np.ndarray:
    """pi pulse on spin 1 applied to the genuine near state."""
    return conjugate(rotation_pulse(np.pi, "x", 1), near_state_genuine(p))
