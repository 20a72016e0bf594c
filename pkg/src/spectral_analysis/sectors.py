from typing import Dict, List, Tuple

import numpy as np

from common import UsageError
from spin_algebra import ORDERS, coherence_order_matrix
from relaxation_model import vector_index

BASIS_LABELS = ("00", "01", "10", "11")
POPULATION_INDICES = tuple(vector_index(i, i) for i in range(4))
# (p00, p01, p10, p11, c, c*) with c = <01|rho|10>
ZERO_QUANTUM_INDICES = POPULATION_INDICES + (vector_index(1, 2), vector_index(2, 1))

# X1 = p00 + p11 - p01 - p10, X2 = c + c*, X3 = c - c*
CLOSURE_ROWS = np.array(
    [
        [1, -1, -1, 1, 0, 0],
        [0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 1, -1],
    ],
    dtype=complex,
)


def _check_full(L: np.ndarray) -> np.ndarray:
    L = np.asarray(L)
    if L.shape != (16, 16):
        raise UsageError(f"Expected a 16x16 generator, got shape {L.shape}")
    return L


def population_generator(L: np.ndarray) -> np.ndarray:
    """Rate matrix of the diagonal sector, columns are source levels."""
    L = _check_full(L)
    return np.real(L[np.ix_(POPULATION_INDICES, POPULATION_INDICES)])


def zero_quantum_block(L: np.ndarray) -> np.ndarray:
    """Generator on (p00, p01, p10, p11, c, c*)."""
    L = _check_full(L)
    return L[np.ix_(ZERO_QUANTUM_INDICES, ZERO_QUANTUM_INDICES)]


def coherence_block_indices() -> Dict[int, List[int]]:
    orders = coherence_order_matrix()
    blocks: Dict[int, List[int]] = {m: [] for m in ORDERS}
    for col in range(4):
        for row in range(4):
            blocks[int(orders[row, col])].append(vector_index(row, col))
    return blocks


def block_leakage(L: np.ndarray) -> float:
    """Largest norm of a block of L that maps one coherence order into another."""
    L = _check_full(L)
    blocks = coherence_block_indices()
    leakage = 0.0
    for source, source_indices in blocks.items():
        for target, target_indices in blocks.items():
            if source == target:
                continue
            block = L[np.ix_(target_indices, source_indices)]
            leakage = max(leakage, float(np.linalg.norm(block)))
    return leakage


def coherence_closure(L0: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Project the zero-quantum generator onto (X1, X2, X3).

    Returns the 3x3 generator and the closure residual, which is zero when
    the three variables evolve autonomously.
    """
    L0 = np.asarray(L0)
    if L0.shape != (6, 6):
        raise UsageError(f"Expected a 6x6 zero-quantum block, got shape {L0.shape}")
    projected = CLOSURE_ROWS @ L0
    closure = projected @ np.linalg.pinv(CLOSURE_ROWS)
    residual = float(np.linalg.norm(projected - closure @ CLOSURE_ROWS))
    return closure, residual


def transition_rates(L_p: np.ndarray) -> Dict[str, float]:
    rates = {}
    for source in range(4):
        for target in range(4):
            if source != target:
                label = f"{BASIS_LABELS[source]}->{BASIS_LABELS[target]}"
                rates[label] = float(np.real(L_p[target, source]))
    return rates


def detailed_balance_residual(L_p: np.ndarray, p: np.ndarray) -> float:
    """max |W_ij p_j - W_ji p_i| over level pairs."""
    flux = np.real(L_p) * np.asarray(p)[None, :]
    off_diagonal = flux - flux.T
    np.fill_diagonal(off_diagonal, 0.0)
    return float(np.max(np.abs(off_diagonal)))
