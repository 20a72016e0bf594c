import numpy as np
from scipy.linalg import expm
from typing import Sequence, Tuple

from common import DomainError, UsageError

ATOL = 1e-12

# Single-spin operators in the basis |0> (spin up), |1> (spin down)
_SINGLE = {
    "x": np.array([[0, 0.5], [0.5, 0]], dtype=complex),
    "y": np.array([[0, -0.5j], [0.5j, 0]], dtype=complex),
    "z": np.array([[0.5, 0], [0, -0.5]], dtype=complex),
    "plus": np.array([[0, 1], [0, 0]], dtype=complex),
    "minus": np.array([[0, 0], [1, 0]], dtype=complex),
}
_AXIS_ALIASES = {"+": "plus", "-": "minus"}
_PHASE_AXES = {"x": ("x", 1.0), "y": ("y", 1.0), "-x": ("x", -1.0), "-y": ("y", -1.0)}

OperatorTriple = Tuple[np.ndarray, np.ndarray, np.ndarray]


def identity(dim: int = 4) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def spin_operator(spin_index: int, axis: str) -> np.ndarray:
    """
    Two-spin embedding of a single-spin operator.

    Spin 1 is the left tensor factor: |ab> with a the state of spin 1.

    Args:
        spin_index: 1 or 2
        axis: x, y, z, plus or minus (raising/lowering, I+- = Ix +- iIy)

    Returns:
        4x4 complex matrix acting as the identity on the other spin
    """
    axis = _AXIS_ALIASES.get(axis, axis)
    if axis not in _SINGLE:
        raise UsageError(f"Unknown spin axis: {axis}")
    op = _SINGLE[axis]
    if spin_index == 1:
        return np.kron(op, identity(2))
    if spin_index == 2:
        return np.kron(identity(2), op)
    raise UsageError(f"Spin index must be 1 or 2, got {spin_index}")


def spin_vector(spin_index: int) -> OperatorTriple:
    return tuple(spin_operator(spin_index, axis) for axis in ("x", "y", "z"))


def total_z() -> np.ndarray:
    return spin_operator(1, "z") + spin_operator(2, "z")


def rank_two_tensor(m: int, first: OperatorTriple, second: OperatorTriple) -> np.ndarray:
    """
    Rank-2 irreducible tensor T_2m built from two commuting vector operators A and B.

        T_0   = (3 AzBz - A.B) / sqrt(6)
        T_+-1 = -+ (A+-Bz + AzB+-) / 2
        T_+-2 = A+-B+- / 2

    with A+- = Ax +- iAy.
    """
    if abs(m) > 2:
        raise DomainError(f"Spherical tensor order must satisfy |m| <= 2, got {m}")
    ax, ay, az = first
    bx, by, bz = second
    if m == 0:
        dot = ax @ bx + ay @ by + az @ bz
        return (3 * az @ bz - dot) / np.sqrt(6)
    sign = 1 if m > 0 else -1
    a_ladder = ax + sign * 1j * ay
    b_ladder = bx + sign * 1j * by
    if abs(m) == 1:
        return -sign * 0.5 * (a_ladder @ bz + az @ b_ladder)
    return 0.5 * a_ladder @ b_ladder


def spherical_tensor(m: int) -> np.ndarray:
    """Dipolar tensor T_2m of spin 1 and spin 2."""
    return rank_two_tensor(m, spin_vector(1), spin_vector(2))


def csa_spherical_tensor(m: int, spin_index: int) -> np.ndarray:
    """Tensor of a unit static field along z with the vector of one spin."""
    zero = np.zeros((4, 4), dtype=complex)
    field = (zero, zero, identity())
    return rank_two_tensor(m, spin_vector(spin_index), field)


def _pulse_generator(phase_axis: str, target) -> np.ndarray:
    if phase_axis not in _PHASE_AXES:
        raise UsageError(f"Unknown pulse phase axis: {phase_axis}")
    axis, sign = _PHASE_AXES[phase_axis]
    if target in ("both", 0):
        spins: Sequence[int] = (1, 2)
    elif target in (1, 2, "1", "2"):
        spins = (int(target),)
    else:
        raise UsageError(f"Unknown pulse target: {target}")
    return sign * sum(spin_operator(spin, axis) for spin in spins)


def rotation_pulse(angle: float, phase_axis: str, target="both") -> np.ndarray:
    """Unitary exp(-i angle I_axis) of an ideal hard pulse on spin 1, spin 2 or both."""
    return expm(-1j * angle * _pulse_generator(phase_axis, target))


def conjugate(unitary: np.ndarray, operator: np.ndarray) -> np.ndarray:
    return unitary @ operator @ unitary.conj().T


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def allclose(a: np.ndarray, b: np.ndarray, atol: float = ATOL) -> bool:
    return bool(np.allclose(a, b, rtol=0.0, atol=atol))
