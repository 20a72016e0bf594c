"""
Closed-form generators of the dipolar pair in the extreme-narrowing limit,
first order in epsilon, Ising coupling. Used as oracles for the assembled ones.
"""

import numpy as np


def reference_population_generator(k0: float, epsilon: float) -> np.ndarray:
    """4x4 rate matrix on (p00, p01, p10, p11), columns are source levels."""
    single_up = k0 * (1 + epsilon) / 16
    single_down = k0 * (1 - epsilon) / 16
    double_up = k0 * (1 + 2 * epsilon) / 4
    double_down = k0 * (1 - 2 * epsilon) / 4
    zero = k0 / 24
    rates = np.array(
        [
            [0, single_up, single_up, double_up],
            [single_down, 0, zero, single_up],
            [single_down, zero, 0, single_up],
            [double_down, single_down, single_down, 0],
        ]
    )
    return rates - np.diag(rates.sum(axis=0))


def reference_zero_quantum_block(
    k0: float, epsilon: float, delta: float
) -> np.ndarray:
    """6x6 generator on (p00, p01, p10, p11, c, c*) with c = <01|rho|10>."""
    up = k0 * (1 + epsilon) / 16
    down = k0 * (1 - epsilon) / 16
    flat = k0 / 16
    block = np.zeros((6, 6), dtype=complex)
    block[:4, :4] = reference_population_generator(k0, epsilon)
    # populations fed by c + c*
    block[:4, 4] = block[:4, 5] = [up, -flat, -flat, down]
    # c and c* fed by populations
    block[4, :4] = block[5, :4] = [down, -flat, -flat, up]
    damping = k0 / 24 + up + down
    block[4, 4] = 1j * delta - damping
    block[5, 5] = -1j * delta - damping
    block[4, 5] = block[5, 4] = k0 / 24
    return block


def reference_closure(k0: float, delta: float) -> np.ndarray:
    """Generator of (X1, X2, X3) at epsilon = 0."""
    return np.array(
        [
            [-k0 / 4, k0 / 4, 0],
            [k0 / 8, -k0 / 8, 1j * delta],
            [0, 1j * delta, -5 * k0 / 24],
        ]
    )


def reference_eigenvalues(k0: float) -> np.ndarray:
    """Population-sector spectrum, stationary first then slowest."""
    return -k0 / 24 * np.array([0.0, 5.0, 6.0, 15.0])


def reference_slow_mode() -> np.ndarray:
    return np.array([0.0, -1.0, 1.0, 0.0]) / np.sqrt(2)
