import hashlib
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, Optional

import numpy as np
from scipy.linalg import expm

from common import NumericalError, UsageError
from relaxation_model import BathParams, SystemParams, vectorize, unvectorize
from spectral_analysis import ModeDecomposition, overlaps

try:
    from .states import populations, density_from_populations, validate_density_matrix
except ImportError:
    from states import populations, density_from_populations, validate_density_matrix

SPACINGS = ("log", "linear")
# Initial states may carry rounding from an earlier propagation
INITIAL_STATE_ATOL = 1e-8


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    metadata: Dict[str, Any] = field(default_factory=dict)
    # Exact state at arbitrary t, used to refine crossings
    evaluator: Optional[Callable[[float], np.ndarray]] = None

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        states = np.asarray(self.states, dtype=complex)
        if times.ndim != 1 or len(times) == 0:
            raise UsageError("Trajectory needs a non-empty one-dimensional time grid")
        if np.any(np.diff(times) <= 0):
            raise UsageError("Trajectory times must be strictly increasing")
        if len(states) != len(times):
            raise UsageError(
                f"Trajectory has {len(states)} states for {len(times)} times"
            )
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", states)

    @property
    def populations(self) -> np.ndarray:
        return populations(self.states)

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    def state_at(self, t: float) -> np.ndarray:
        if self.evaluator is not None:
            return self.evaluator(t)
        matches = np.flatnonzero(np.isclose(self.times, t, rtol=1e-12, atol=0.0))
        if len(matches) == 0:
            raise UsageError(f"Time {t} is not on the trajectory grid")
        return self.states[matches[0]]


def time_grid(
    t_min: float = 1e-3,
    t_max: float = 20.0,
    points: int = 400,
    spacing: str = "log",
    include_origin: bool = True,
) -> np.ndarray:
    if points < 2:
        raise UsageError(f"Time grid needs at least 2 points, got {points}")
    if not t_max > t_min:
        raise UsageError(f"Time grid needs t_max > t_min, got {t_min}..{t_max}")
    if spacing == "log":
        if not t_min > 0:
            raise UsageError(f"Logarithmic grid needs t_min > 0, got {t_min}")
        grid = np.logspace(np.log10(t_min), np.log10(t_max), points)
    elif spacing == "linear":
        if t_min < 0:
            raise UsageError(f"Time grid cannot start before 0, got {t_min}")
        grid = np.linspace(t_min, t_max, points)
    else:
        raise UsageError(f"Unknown grid spacing: {spacing}, expected one of {SPACINGS}")
    if include_origin and grid[0] > 0:
        grid = np.concatenate(([0.0], grid))
    return grid


def _check_times(times) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise UsageError("Times must be a non-empty list")
    if np.any(times < 0):
        raise UsageError("Times must be nonnegative")
    if np.any(np.diff(times) <= 0):
        raise UsageError("Times must be strictly increasing")
    return times


def generator_fingerprint(generator: np.ndarray) -> str:
    data = np.ascontiguousarray(np.asarray(generator, dtype=complex)).tobytes()
    return hashlib.sha256(data).hexdigest()[:16]


def propagate_vector(generator: np.ndarray, x0: np.ndarray, times) -> np.ndarray:
    """exp(G t) x0 for every t, shaped (time, component)."""
    generator = np.asarray(generator, dtype=complex)
    x0 = np.asarray(x0, dtype=complex)
    if not np.all(np.isfinite(generator)):
        raise NumericalError("Generator contains non-finite entries")
    result = np.array([expm(generator * t) @ x0 for t in np.asarray(times, float)])
    if not np.all(np.isfinite(result)):
        raise NumericalError("Propagation produced non-finite values")
    return result


def propagate(
    L: np.ndarray,
    rho0: np.ndarray,
    times,
    metadata: Dict[str, Any] = None,
    system: Optional[SystemParams] = None,
    bath: Optional[BathParams] = None,
) -> Trajectory:
    """
    Density matrices exp(L t) rho0 on a time grid.

    rho0 must be a density matrix. When system and bath are given, the
    metadata keeps a snapshot of both next to the generator fingerprint.
    """
    times = _check_times(times)
    rho0 = validate_density_matrix(rho0, INITIAL_STATE_ATOL, "initial state")
    vector0 = vectorize(rho0)
    vectors = propagate_vector(L, vector0, times)
    states = np.array([unvectorize(vector) for vector in vectors])
    info: Dict[str, Any] = {"generator": generator_fingerprint(L), "method": "expm"}
    if system is not None:
        info["system"] = asdict(system)
    if bath is not None:
        info["bath"] = asdict(bath)
    info.update(metadata or {})

    def evaluator(t: float) -> np.ndarray:
        return unvectorize(expm(np.asarray(L, dtype=complex) * t) @ vector0)

    return Trajectory(times=times, states=states, metadata=info, evaluator=evaluator)


def propagate_by_modes(
    md: ModeDecomposition, p0, times, metadata: Dict[str, Any] = None
) -> Trajectory:
    """Population trajectory sum_n a_n exp(lambda_n t) v_n."""
    if md.degenerate:
        raise NumericalError(
            "Decomposition is near-degenerate or defective, use matrix-exponential propagation"
        )
    if md.dim != 4:
        raise UsageError(f"Mode propagation works on the 4-level sector, got {md.dim}")
    times = _check_times(times)
    amplitudes = overlaps(md, np.asarray(p0, dtype=float))

    def population_at(t) -> np.ndarray:
        weights = amplitudes * np.exp(md.eigenvalues * t)
        return np.real(weights @ md.right_vectors)

    states = np.array([density_from_populations(population_at(t)) for t in times])
    info = {"method": "modes"}
    info.update(metadata or {})
    return Trajectory(
        times=times,
        states=states,
        metadata=info,
        evaluator=lambda t: density_from_populations(population_at(t)),
    )
