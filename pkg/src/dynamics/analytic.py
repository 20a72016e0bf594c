"""
First-order closed forms for the dipolar population dynamics.

Times are in seconds when k0 is in 1/s; pass k0 = 1 for K0 t units.
The outer levels relax at 5 K0/8 and the inner ones at 5 K0/24.
"""

from typing import Callable, Tuple

import numpy as np

from common import DomainError

try:
    from .propagation import Trajectory
    from .states import density_from_populations
except ImportError:
    from propagation import Trajectory
    from states import density_from_populations

OUTER_RATE = 5.0 / 8.0
INNER_RATE = 5.0 / 24.0


def _decays(k0: float, t) -> Tuple[np.ndarray, np.ndarray]:
    t = np.asarray(t, dtype=float)
    return np.exp(-OUTER_RATE * k0 * t), np.exp(-INNER_RATE * k0 * t)


def theta_state_populations(theta: float, epsilon: float, k0: float, t) -> np.ndarray:
    outer, inner = _decays(k0, t)
    shift = 0.25 * epsilon * (np.cos(2 * theta) - 1)
    return np.stack(
        [
            0.25 + 0.5 * epsilon + shift * outer,
            0.25 - shift * inner,
            0.25 + shift * inner,
            0.25 - 0.5 * epsilon - shift * outer,
        ],
        axis=-1,
    )


def far_state_populations(epsilon: float, k0: float, t) -> np.ndarray:
    outer, _ = _decays(k0, t)
    flat = np.full_like(outer, 0.25)
    return np.stack(
        [
            0.25 + 0.5 * epsilon - epsilon * outer,
            flat,
            flat,
            0.25 - 0.5 * epsilon + epsilon * outer,
        ],
        axis=-1,
    )


def genuine_near_state_populations(epsilon: float, k0: float, t) -> np.ndarray:
    outer, inner = _decays(k0, t)
    return np.stack(
        [
            0.25 + 0.5 * epsilon - 0.5 * epsilon * outer,
            0.25 + 0.5 * epsilon * inner,
            0.25 - 0.5 * epsilon * inner,
            0.25 - 0.5 * epsilon + 0.5 * epsilon * outer,
        ],
        axis=-1,
    )


def analytic_trace_distances(
    theta: float, epsilon: float, k0: float, t
) -> Tuple[np.ndarray, np.ndarray]:
    """(D_far, D_near) to the thermal state."""
    outer, inner = _decays(k0, t)
    far = abs(epsilon) * outer
    near = 0.25 * abs(epsilon) * (1 - np.cos(2 * theta)) * (outer + inner)
    return far, near


def theta_crossing_time(theta: float, k0: float) -> float:
    """Time at which D_far = D_near(theta): (12 / 5 K0) ln((3 + cos 2theta) / (1 - cos 2theta))."""
    if not 0 < theta < np.pi / 2:
        raise DomainError(f"theta must lie in (0, pi/2), got {theta}")
    c = np.cos(2 * theta)
    return float(12.0 / (5.0 * k0) * np.log((3 + c) / (1 - c)))


def genuine_crossing_time_estimate(k0: float) -> float:
    """Leading-order relative-entropy crossing of the far and genuine near states."""
    return float(6.0 / (5.0 * k0) * np.log(3.0))


def analytic_trajectory(
    populations_fn: Callable[[np.ndarray], np.ndarray], times
) -> Trajectory:
    """Wrap a closed form p(t) into a trajectory of diagonal states."""
    times = np.asarray(times, dtype=float)
    states = np.array([density_from_populations(p) for p in populations_fn(times)])
    return Trajectory(
        times=times,
        states=states,
        metadata={"method": "analytic"},
        evaluator=lambda t: density_from_populations(populations_fn(np.asarray(t))),
    )
