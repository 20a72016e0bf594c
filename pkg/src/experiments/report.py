import json
from pathlib import Path
from typing import Any, Dict

import numpy as np
import pandas as pd

from dynamics import Trajectory

VERSION = "1.0.0"
METRIC_COLUMNS = {"trace_distance": "D", "relative_entropy": "d"}
LEVELS = ("00", "01", "10", "11")


def trajectory_frame(
    traj_far: Trajectory,
    traj_near: Trajectory,
    metric: str,
    far_curve: np.ndarray,
    near_curve: np.ndarray,
    k0: float,
) -> pd.DataFrame:
    prefix = METRIC_COLUMNS[metric]
    columns: Dict[str, Any] = {
        "time": traj_far.times,
        "k0_time": traj_far.times * k0,
        f"{prefix}_far": far_curve,
        f"{prefix}_near": near_curve,
    }
    for label, traj in (("far", traj_far), ("near", traj_near)):
        for index, level in enumerate(LEVELS):
            columns[f"p{level}_{label}"] = traj.populations[:, index]
    return pd.DataFrame(columns)


def write_trajectory_csv(frame: pd.DataFrame, path: Path) -> Path:
    frame.to_csv(path, index=False, float_format="%.17g")
    return path


def complex_list(values) -> Dict[str, list]:
    values = np.asarray(values, dtype=complex)
    return {"real": values.real.tolist(), "imag": values.imag.tolist()}


def write_report(report: Dict[str, Any], path: Path) -> Path:
    with open(path, "w") as file:
        json.dump({"version": VERSION, **report}, file, indent=2)
        file.write("\n")
    return path
