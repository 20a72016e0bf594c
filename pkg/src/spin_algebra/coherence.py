import numpy as np
from dataclasses import dataclass
from typing import List

try:
    from .operators import total_z
except ImportError:
    from operators import total_z

# [Iz1 + Iz2, T] = COHERENCE_SIGN * m * T for a component T of order m
COHERENCE_SIGN = 1
ORDERS = (-2, -1, 0, 1, 2)


@dataclass(frozen=True)
class CoherenceComponent:
    order: int
    component: np.ndarray


def magnetic_numbers() -> np.ndarray:
    return np.real(np.diag(total_z())).round().astype(int)


def coherence_order_matrix() -> np.ndarray:
    """Order of every element |i><j|: M_i - M_j with M the total z quantum number."""
    numbers = magnetic_numbers()
    return COHERENCE_SIGN * (numbers[:, None] - numbers[None, :])


def coherence_decompose(matrix: np.ndarray) -> List[CoherenceComponent]:
    """Split a 4x4 matrix into its five coherence-order parts, orders -2..2."""
    matrix = np.asarray(matrix, dtype=complex)
    orders = coherence_order_matrix()
    return [
        CoherenceComponent(order=m, component=np.where(orders == m, matrix, 0))
        for m in ORDERS
    ]


def coherence_component(matrix: np.ndarray, order: int) -> np.ndarray:
    for component in coherence_decompose(matrix):
        if component.order == order:
            return component.component
    return np.zeros((4, 4), dtype=complex)
