import sys
import os

if __name__ == "__main__":
    sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

from common import ConfigurationError
from relaxation_model import (
    COUPLINGS,
    CHANNELS,
    MAX_EPSILON,
    SPECTRAL_MODES,
    narrowing_diagnostic,
)
from metrics_mpemba import METRICS
from dynamics import SPACINGS

# Handle both relative and absolute imports
try:
    from .read_config import ExperimentConfig, read_config
    from .presets import PRESETS
except ImportError:
    from config.read_config import ExperimentConfig, read_config
    from config.presets import PRESETS

NEAR_STATES = ("theta", "genuine")
DIPOLAR_UNITS = ("cyclic", "angular")


def validate_config(config: ExperimentConfig, verbose: bool = True):
    validate_choices(config, verbose)
    validate_system(config, verbose)
    validate_bath(config, verbose)
    validate_time_grid(config, verbose)


def _passed(message: str, verbose: bool):
    if verbose:
        print(f"{message} ✅")


def _check_choice(value, options, name: str):
    if value not in options:
        raise ConfigurationError(f"Invalid {name}: {value}, expected one of {options}")


def validate_choices(config: ExperimentConfig, verbose: bool = True):
    _check_choice(config.preset, tuple(PRESETS), "preset")
    _check_choice(config.metric, METRICS, "metric")
    _check_choice(config.near_state, NEAR_STATES, "near state")
    _check_choice(config.coupling, COUPLINGS, "coupling")
    _check_choice(config.spectral_mode, SPECTRAL_MODES, "spectral mode")
    _check_choice(config.bath.dipolar_unit, DIPOLAR_UNITS, "dipolar unit")
    for channel in config.channels:
        _check_choice(channel, CHANNELS, "channel")
    if "dipolar" not in config.channels:
        raise ConfigurationError("The dipolar channel is always required")
    _passed(
        f"Preset {config.preset}: metric {config.metric}, near state {config.near_state}, "
        f"channels {','.join(config.channels)}",
        verbose,
    )


def validate_system(config: ExperimentConfig, verbose: bool = True):
    system = config.system
    if config.near_state == "theta":
        if not 0 < config.theta_degrees < 90:
            raise ConfigurationError(
                f"theta must lie in (0, 90) degrees, got {config.theta_degrees}"
            )
        if not system.offset_hz > 0:
            raise ConfigurationError(
                f"State preparation needs a positive offset, got {system.offset_hz} Hz"
            )
    if abs(system.epsilon) >= MAX_EPSILON:
        raise ConfigurationError(
            f"epsilon must satisfy |epsilon| < {MAX_EPSILON}, got {system.epsilon}"
        )
    if not system.larmor_frequency_mhz > 0:
        raise ConfigurationError(
            f"Larmor frequency must be positive, got {system.larmor_frequency_mhz} MHz"
        )
    _passed(
        f"System: omega0/2pi = {system.larmor_frequency_mhz} MHz, offset {system.offset_hz} Hz, "
        f"J = {system.j_coupling_hz} Hz, epsilon = {system.epsilon}",
        verbose,
    )


def validate_bath(config: ExperimentConfig, verbose: bool = True):
    bath = config.bath
    if not bath.correlation_time_ps > 0:
        raise ConfigurationError(
            f"Correlation time must be positive, got {bath.correlation_time_ps} ps"
        )
    if not bath.dipolar_coupling_khz > 0:
        raise ConfigurationError(
            f"Dipolar coupling must be positive, got {bath.dipolar_coupling_khz} kHz"
        )
    wants_csa = (
        "csa" in config.channels
        or "cross" in config.channels
        or bath.include_cross_correlation
    )
    if wants_csa and bath.csa_khz == 0:
        raise ConfigurationError(
            "CSA and cross-correlation channels need a nonzero csa-khz"
        )
    system, bath_params = config.to_params()
    narrowing = narrowing_diagnostic(bath_params, system)
    _passed(
        f"Bath: b = {bath.dipolar_coupling_khz} kHz ({bath.dipolar_unit}), "
        f"tau_c = {bath.correlation_time_ps} ps, K0 = {bath_params.k0:.6e} 1/s, "
        f"omega0*tau_c = {narrowing:.3e}",
        verbose,
    )


def validate_time_grid(config: ExperimentConfig, verbose: bool = True):
    grid = config.time_grid
    _check_choice(grid.spacing, SPACINGS, "grid spacing")
    if grid.points < 2:
        raise ConfigurationError(f"Time grid needs at least 2 points, got {grid.points}")
    if not grid.t_max > grid.t_min:
        raise ConfigurationError(
            f"Time grid needs t-max > t-min, got {grid.t_min}..{grid.t_max}"
        )
    if grid.spacing == "log" and not grid.t_min > 0:
        raise ConfigurationError(
            f"Logarithmic time grid needs t-min > 0, got {grid.t_min}"
        )
    if grid.t_min < 0:
        raise ConfigurationError(f"Time grid cannot start before 0, got {grid.t_min}")
    _passed(
        f"Time grid: {grid.points} {grid.spacing} points over K0t in [{grid.t_min}, {grid.t_max}]",
        verbose,
    )


if __name__ == "__main__":
    import dotenv

    dotenv.load_dotenv()

    config = read_config(os.getcwd() + "/config.json")

    validate_config(config)
