from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from common import EXIT_OK, print_colored, print_warning
from config import ExperimentConfig, validate_config
from relaxation_model import (
    build_liouvillian,
    narrowing_diagnostic,
    resolve_channels,
    thermal_state,
    to_dimensionless,
)
from spectral_analysis import (
    eigendecompose,
    mode_contributions,
    overlaps,
    population_generator,
)
from dynamics import (
    far_state,
    genuine_crossing_time_estimate,
    near_state,
    near_state_genuine,
    populations,
    propagate,
    theta_crossing_time,
    time_grid,
)
from metrics_mpemba import MpembaReport, classify, detect_crossing, metric_curve

try:
    from .report import (
        complex_list,
        trajectory_frame,
        write_report,
        write_trajectory_csv,
    )
except ImportError:
    from report import (
        complex_list,
        trajectory_frame,
        write_report,
        write_trajectory_csv,
    )


@dataclass(frozen=True)
class ExperimentResult:
    status: int
    csv_path: Path
    report_path: Path
    mpemba: MpembaReport
    analytic_crossing_time: Optional[float]


def _metric_scale(cfg: ExperimentConfig) -> float:
    """Readability factor 1/(2 eps) for trace distance, 1/(2 eps)^2 for relative entropy."""
    if not cfg.rescale_by_epsilon:
        return 1.0
    epsilon = cfg.system.epsilon
    if epsilon == 0:
        print_warning("Rescaling by epsilon requested with epsilon = 0, curves left unscaled")
        return 1.0
    power = 1 if cfg.metric == "trace_distance" else 2
    return 1.0 / (2 * abs(epsilon)) ** power


def _analytic_crossing(cfg: ExperimentConfig, k0: float) -> Optional[float]:
    if cfg.metric == "trace_distance" and cfg.near_state == "theta":
        return theta_crossing_time(cfg.theta, k0)
    if cfg.metric == "relative_entropy" and cfg.near_state == "genuine":
        return genuine_crossing_time_estimate(k0)
    return None


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """
    Run one relaxation experiment and write <preset>_trajectory.csv and
    <preset>_report.json into the output directory.
    """
    validate_config(cfg, verbose=False)
    system, bath = cfg.to_params()
    physical_k0 = bath.k0
    narrowing = narrowing_diagnostic(bath, system)

    if cfg.dimensionless:
        system, bath = to_dimensionless(system, bath)
    k0 = bath.k0
    grid = cfg.time_grid
    k0_times = time_grid(
        grid.t_min, grid.t_max, grid.points, grid.spacing, grid.include_origin
    )
    times = k0_times / k0

    channels = resolve_channels(cfg.channels, bath)
    print(
        f"Running {cfg.preset}: {cfg.metric}, near state {cfg.near_state}, "
        f"channels {','.join(channels)}, {len(times)} time points"
    )
    L = build_liouvillian(system, bath, channels, cfg.coupling, cfg.spectral_mode)

    rho_th = thermal_state(system)
    rho_far = far_state(system)
    if cfg.near_state == "genuine":
        rho_near = near_state_genuine(system)
    else:
        rho_near = near_state(cfg.theta, system)

    traj_far = propagate(L, rho_far, times, {"state": "far"}, system, bath)
    traj_near = propagate(L, rho_near, times, {"state": "near"}, system, bath)

    md = eigendecompose(population_generator(L), rate_scale=k0)
    p_far = populations(rho_far)
    p_near = populations(rho_near)
    mpemba = detect_crossing(traj_far, traj_near, cfg.metric, rho_th)
    mpemba = classify(md, p_far, p_near, mpemba)
    analytic = _analytic_crossing(cfg, k0)

    scale = _metric_scale(cfg)
    far_curve = metric_curve(traj_far, cfg.metric, rho_th) * scale
    near_curve = metric_curve(traj_near, cfg.metric, rho_th) * scale

    output = Path(cfg.output_path)
    output.mkdir(parents=True, exist_ok=True)
    csv_path = write_trajectory_csv(
        trajectory_frame(traj_far, traj_near, cfg.metric, far_curve, near_curve, k0),
        output / f"{cfg.preset}_trajectory.csv",
    )

    report: Dict[str, Any] = {
        "units": {
            "time": "1/K0" if cfg.dimensionless else "s",
            "dipolar-unit": cfg.bath.dipolar_unit,
            "metric-scale": scale,
        },
        "k0-per-second": physical_k0,
        "omega0-tau-c": narrowing,
        "eigenvalues": complex_list(md.eigenvalues),
        "overlaps": {
            "far": complex_list(overlaps(md, p_far)),
            "near": complex_list(overlaps(md, p_near)),
        },
        "mpemba": asdict(mpemba),
        "analytic-crossing-time": analytic,
        "config": cfg.to_dict(),
    }
    if cfg.preset == "fig3b_overlaps":
        at = mpemba.crossing_time if mpemba.crossing_time is not None else 0.0
        report["mode-contributions"] = {
            "time": at,
            "far": np.real(mode_contributions(md, p_far, [at])[0]).tolist(),
            "near": np.real(mode_contributions(md, p_near, [at])[0]).tolist(),
        }
    report_path = write_report(report, output / f"{cfg.preset}_report.json")

    if mpemba.crossing_time is None:
        print_colored(f"No crossing found ({cfg.metric})", "yellow")
    else:
        print_colored(
            f"Crossing at t = {mpemba.crossing_time:.9g} ({mpemba.classification}), "
            f"written {csv_path} and {report_path}",
            "green",
        )
    return ExperimentResult(
        status=EXIT_OK,
        csv_path=csv_path,
        report_path=report_path,
        mpemba=mpemba,
        analytic_crossing_time=analytic,
    )
