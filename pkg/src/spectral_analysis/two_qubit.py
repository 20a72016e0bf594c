from typing import Dict, Tuple

import numpy as np

from common import UsageError

OUTER_PAIR = (0, 3)
INNER_PAIR = (1, 2)


def _pair_rate(rates: np.ndarray, source: int, target: int, pair) -> float:
    direct = rates[target, source]
    relay = 0.0
    for k in range(rates.shape[0]):
        if k in pair:
            continue
        back = rates[source, k] + rates[target, k]
        if back > 0:
            relay += rates[k, source] * rates[target, k] / back
    return float(direct + relay)


def effective_pair_generator(L_p: np.ndarray, pair: Tuple[int, int]) -> np.ndarray:
    """
    Two-level Markov generator for a pair of levels of the population sector.

    Each rate is the direct jump plus the relay through every level outside the
    pair, weighted by the branching ratio back into the pair.
    """
    rates = np.real(np.asarray(L_p))
    if rates.shape != (4, 4):
        raise UsageError(f"Expected a 4x4 population generator, got {rates.shape}")
    first, second = pair
    if first == second or not {first, second} <= set(range(4)):
        raise UsageError(f"Invalid level pair: {pair}")
    up = _pair_rate(rates, first, second, pair)
    down = _pair_rate(rates, second, first, pair)
    return np.array([[-up, down], [up, -down]])


def two_qubit_generators(L_p: np.ndarray) -> Dict[str, np.ndarray]:
    return {
        "outer": effective_pair_generator(L_p, OUTER_PAIR),
        "inner": effective_pair_generator(L_p, INNER_PAIR),
    }
