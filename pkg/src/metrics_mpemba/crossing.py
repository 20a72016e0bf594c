from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import bisect

from common import UsageError
from dynamics import Trajectory
from spectral_analysis import ModeDecomposition, overlaps

try:
    from .distances import metric_function
except ImportError:
    from distances import metric_function

CLASSIFICATIONS = ("none", "weak", "strong", "genuine")
CROSSING_RTOL = 1e-9
OVERLAP_TOLERANCE = 1e-10


@dataclass(frozen=True)
class MpembaReport:
    metric: str
    crossing_time: Optional[float]
    initial_gap: float
    slow_overlaps: Dict[str, float] = field(default_factory=dict)
    classification: str = "none"
    crossing_times: Tuple[float, ...] = ()


def metric_curve(traj: Trajectory, metric: str, rho_ref: np.ndarray) -> np.ndarray:
    measure = metric_function(metric)
    return np.array([measure(state, rho_ref) for state in traj.states])


def _sign_changes(gap: np.ndarray):
    """Consecutive grid brackets (i, j) across which the gap changes sign."""
    nonzero = np.flatnonzero(gap != 0)
    brackets = []
    for i, j in zip(nonzero[:-1], nonzero[1:]):
        if np.sign(gap[i]) != np.sign(gap[j]):
            brackets.append((int(i), int(j)))
    return brackets


def detect_crossing(
    traj_far: Trajectory,
    traj_near: Trajectory,
    metric: str,
    rho_ref: np.ndarray,
    rtol: float = CROSSING_RTOL,
) -> MpembaReport:
    """
    Locate where the far-state metric drops below the near-state metric.

    Crossings are bracketed on the grid and bisected, on exact states when both
    trajectories carry an evaluator and on monotone cubic interpolants otherwise.
    """
    if traj_far.times.shape != traj_near.times.shape or not np.array_equal(
        traj_far.times, traj_near.times
    ):
        raise UsageError("Far and near trajectories must share one time grid")
    times = traj_far.times
    measure = metric_function(metric)
    far = metric_curve(traj_far, metric, rho_ref)
    near = metric_curve(traj_near, metric, rho_ref)
    gap = far - near
    initial_gap = float(gap[0])

    if initial_gap <= 0:
        return MpembaReport(metric=metric, crossing_time=None, initial_gap=initial_gap)

    if traj_far.evaluator is not None and traj_near.evaluator is not None:

        def gap_at(t: float) -> float:
            return measure(traj_far.evaluator(t), rho_ref) - measure(
                traj_near.evaluator(t), rho_ref
            )

    else:
        far_curve = PchipInterpolator(times, far)
        near_curve = PchipInterpolator(times, near)

        def gap_at(t: float) -> float:
            return float(far_curve(t) - near_curve(t))

    crossings = []
    for i, j in _sign_changes(gap):
        crossings.append(float(bisect(gap_at, times[i], times[j], rtol=rtol)))

    if not crossings:
        return MpembaReport(metric=metric, crossing_time=None, initial_gap=initial_gap)
    # An odd number of sign changes leaves the far state below for good; the
    # overtaking time is then the last crossing. Otherwise it is re-overtaken.
    if len(crossings) % 2 == 0:
        return MpembaReport(
            metric=metric,
            crossing_time=None,
            initial_gap=initial_gap,
            crossing_times=tuple(crossings),
        )
    return MpembaReport(
        metric=metric,
        crossing_time=crossings[-1],
        initial_gap=initial_gap,
        crossing_times=tuple(crossings),
        classification="weak",
    )


def classify(
    md: ModeDecomposition,
    p_far,
    p_near,
    report: MpembaReport,
    tolerance: float = OVERLAP_TOLERANCE,
) -> MpembaReport:
    """Grade a crossing by the slow-mode overlaps of the two initial states."""
    slow = md.slowest_index
    a_far = complex(overlaps(md, np.asarray(p_far, dtype=float))[slow])
    a_near = complex(overlaps(md, np.asarray(p_near, dtype=float))[slow])
    slow_overlaps = {"far": a_far.real, "near": a_near.real}

    if report.crossing_time is None:
        return replace(report, slow_overlaps=slow_overlaps, classification="none")
    if report.metric == "relative_entropy":
        return replace(report, slow_overlaps=slow_overlaps, classification="genuine")

    bound = tolerance * np.linalg.norm(p_far)
    if abs(a_far) <= bound and abs(a_near) > bound:
        classification = "strong"
    else:
        classification = "weak"
    return replace(report, slow_overlaps=slow_overlaps, classification=classification)
