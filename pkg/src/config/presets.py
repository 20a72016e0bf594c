from typing import Any, Dict

PRESETS: Dict[str, Dict[str, Any]] = {
    "fig3a": {
        "theta_degrees": 45.0,
        "metric": "trace_distance",
        "near_state": "theta",
    },
    "fig3c": {
        "theta_degrees": 70.0,
        "metric": "trace_distance",
        "near_state": "theta",
    },
    # Same run as fig3c, the report adds per-mode contributions
    "fig3b_overlaps": {
        "theta_degrees": 70.0,
        "metric": "trace_distance",
        "near_state": "theta",
    },
    "fig3d_genuine": {
        "metric": "relative_entropy",
        "near_state": "genuine",
    },
    "custom": {},
}

DEFAULT_PRESET = "fig3a"

# Sample parameters: 500.02 MHz spectrometer, 89 Hz offset, J = 3.24 Hz,
# tau_c = 2.1 ps, b = 5.903 kHz, epsilon = 1e-5
DEFAULTS: Dict[str, Any] = {
    "preset": DEFAULT_PRESET,
    "theta_degrees": 45.0,
    "metric": "trace_distance",
    "near_state": "theta",
    "coupling": "ising",
    "channels": "dipolar",
    "spectral_mode": "linearized",
    "dimensionless": True,
    "rescale_by_epsilon": False,
    "output_path": "./output",
    "system": {
        "larmor_frequency_mhz": 500.02,
        "offset_hz": 89.0,
        "j_coupling_hz": 3.24,
        "epsilon": 1e-5,
    },
    "bath": {
        "dipolar_coupling_khz": 5.903,
        "dipolar_unit": "cyclic",
        "correlation_time_ps": 2.1,
        "csa_khz": 0.0,
        "include_cross_correlation": False,
        "extreme_narrowing_threshold": 1e-2,
    },
    "time_grid": {
        "t_min": 1e-3,
        "t_max": 20.0,
        "points": 400,
        "spacing": "log",
        "include_origin": True,
    },
}
