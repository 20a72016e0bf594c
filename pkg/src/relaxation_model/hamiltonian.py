import numpy as np
from scipy.linalg import expm

from common import DomainError, UsageError
from spin_algebra import spin_operator, total_z, identity

try:
    from .params import SystemParams
except ImportError:
    from params import SystemParams

FRAMES = ("lab", "interaction")
COUPLINGS = ("ising", "full_scalar")


def scalar_coupling(coupling: str = "ising") -> np.ndarray:
    """I1z I2z for ising, I1.I2 for full_scalar."""
    if coupling == "ising":
        return spin_operator(1, "z") @ spin_operator(2, "z")
    if coupling == "full_scalar":
        return sum(
            spin_operator(1, axis) @ spin_operator(2, axis) for axis in ("x", "y", "z")
        )
    raise UsageError(f"Unknown coupling: {coupling}, expected one of {COUPLINGS}")


def hamiltonian(
    p: SystemParams, frame: str = "interaction", coupling: str = "ising"
) -> np.ndarray:
    """
    Two-spin Hamiltonian in rad/s.

    Interaction frame: -(D/2) I1z + (D/2) I2z + 2 pi J K, with K the scalar coupling.
    The lab frame adds omega0 (I1z + I2z).
    """
    if frame not in FRAMES:
        raise UsageError(f"Unknown frame: {frame}, expected one of {FRAMES}")
    h = (
        -0.5 * p.delta_offset * spin_operator(1, "z")
        + 0.5 * p.delta_offset * spin_operator(2, "z")
        + 2 * np.pi * p.j_coupling * scalar_coupling(coupling)
    )
    if frame == "lab":
        h = h + p.omega0 * total_z()
    return h


def thermal_state(
    p: SystemParams, exact: bool = False, coupling: str = "ising"
) -> np.ndarray:
    """
    Equilibrium state at polarization epsilon.

    The default is the high-temperature form [1 + 2 epsilon (I1z + I2z)] / 4.
    exact=True returns exp(-H/k_B T)/Z of the lab Hamiltonian, using
    -hbar/(k_B T) = 2 epsilon / omega0.
    """
    if not exact:
        return (identity() + 2 * p.epsilon * total_z()) / 4
    if p.epsilon == 0:
        return identity() / 4
    if p.omega0 == 0:
        raise DomainError("Exact thermal state needs a nonzero Larmor frequency")
    weight = expm((2 * p.epsilon / p.omega0) * hamiltonian(p, "lab", coupling))
    return weight / np.trace(weight)
