import os
import json
import copy
import math
from typing import Any, Dict, Optional, Tuple
from dataclasses import dataclass

from common import ConfigurationError, UsageError
from relaxation_model import SystemParams, BathParams

# Handle both relative and absolute imports
try:
    from .presets import PRESETS, DEFAULTS, DEFAULT_PRESET
except ImportError:
    from config.presets import PRESETS, DEFAULTS, DEFAULT_PRESET

SECTIONS = ("system", "bath", "time_grid")

# CLI override name -> (section, key)
OVERRIDE_PATHS = {
    "epsilon": ("system", "epsilon"),
    "tau_c": ("bath", "correlation_time_ps"),
    "b": ("bath", "dipolar_coupling_khz"),
    "b_unit": ("bath", "dipolar_unit"),
    "t_max": ("time_grid", "t_max"),
    "points": ("time_grid", "points"),
}


@dataclass(frozen=True)
class SystemSettings:
    larmor_frequency_mhz: float
    offset_hz: float
    j_coupling_hz: float
    epsilon: float

    def to_params(self) -> SystemParams:
        return SystemParams(
            omega0=2 * math.pi * self.larmor_frequency_mhz * 1e6,
            delta_offset=2 * math.pi * self.offset_hz,
            j_coupling=self.j_coupling_hz,
            epsilon=self.epsilon,
        )


@dataclass(frozen=True)
class BathSettings:
    dipolar_coupling_khz: float
    dipolar_unit: str  # "cyclic" multiplies by 2 pi, "angular" is taken as rad/s / 1e3
    correlation_time_ps: float
    csa_khz: float = 0.0
    include_cross_correlation: bool = False
    extreme_narrowing_threshold: float = 1e-2

    def to_params(self) -> BathParams:
        b = self.dipolar_coupling_khz * 1e3
        if self.dipolar_unit == "cyclic":
            b *= 2 * math.pi
        return BathParams(
            b_dipolar=b,
            tau_c=self.correlation_time_ps * 1e-12,
            csa_d=2 * math.pi * self.csa_khz * 1e3,
            include_cross_correlation=self.include_cross_correlation,
            narrowing_threshold=self.extreme_narrowing_threshold,
        )


@dataclass(frozen=True)
class TimeGridSettings:
    """Grid in units of K0 t."""

    t_min: float
    t_max: float
    points: int
    spacing: str = "log"
    include_origin: bool = True


@dataclass(frozen=True)
class ExperimentConfig:
    preset: str
    theta_degrees: float
    metric: str
    near_state: str
    coupling: str
    channels: Tuple[str, ...]
    spectral_mode: str
    dimensionless: bool
    rescale_by_epsilon: bool
    output_path: str
    system: SystemSettings
    bath: BathSettings
    time_grid: TimeGridSettings

    @property
    def theta(self) -> float:
        return math.radians(self.theta_degrees)

    def to_params(self) -> Tuple[SystemParams, BathParams]:
        return self.system.to_params(), self.bath.to_params()

    def to_dict(self) -> Dict[str, Any]:
        """Resolved configuration in the config.json schema (kebab-case keys)."""

        def kebab(obj: Dict[str, Any]) -> Dict[str, Any]:
            return {key.replace("_", "-"): value for key, value in obj.items()}

        return {
            **kebab(
                {
                    "preset": self.preset,
                    "theta_degrees": self.theta_degrees,
                    "metric": self.metric,
                    "near_state": self.near_state,
                    "coupling": self.coupling,
                    "channels": ",".join(self.channels),
                    "spectral_mode": self.spectral_mode,
                    "dimensionless": self.dimensionless,
                    "rescale_by_epsilon": self.rescale_by_epsilon,
                    "output_path": self.output_path,
                }
            ),
            "system": kebab(self.system.__dict__),
            "bath": kebab(self.bath.__dict__),
            "time-grid": kebab(self.time_grid.__dict__),
        }


def read_config(
    config_path: str, overrides: Optional[Dict[str, Any]] = None
) -> ExperimentConfig:
    """
    Read and parse an experiment config file with the following transformations:
    1. Convert kebab-case keys to snake_case
    2. Replace ${VAR:default} patterns with environment variables or defaults
    3. Support nested variable substitution (e.g., ${MPEMBA_EPSILON:${EPSILON}})
    4. Merge with CLI overrides, the preset and the built-in defaults

    A report written by a previous run is accepted too: its "config" section
    holds the resolved parameters.

    Args:
        config_path: Path to the config.json (or report) file
        overrides: CLI values, None entries are ignored

    Returns:
        ExperimentConfig with every parameter resolved
    """
    with open(config_path, "r") as file:
        config = json.load(file)

    if isinstance(config, dict) and isinstance(config.get("config"), dict):
        config = config["config"]

    transformed_config = _transform_config(config)
    return build_config(transformed_config, overrides)


def build_config(
    settings: Dict[str, Any], overrides: Optional[Dict[str, Any]] = None
) -> ExperimentConfig:
    """Resolve precedence: CLI overrides > settings > preset > defaults."""
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    settings = settings or {}

    preset = overrides.get("preset") or _blank_to_none(settings.get("preset"))
    preset = preset or DEFAULT_PRESET
    if preset not in PRESETS:
        raise UsageError(f"Unknown preset: {preset}, expected one of {tuple(PRESETS)}")

    merged = copy.deepcopy(DEFAULTS)
    merged.update(PRESETS[preset])
    _merge(merged, settings)
    for key, value in overrides.items():
        if key in OVERRIDE_PATHS:
            section, name = OVERRIDE_PATHS[key]
            merged[section][name] = value
        else:
            merged[key] = value
    merged["preset"] = preset

    return _dict_to_config(merged)


def _blank_to_none(value: Any) -> Any:
    if isinstance(value, str) and value.strip() == "":
        return None
    return value


def _merge(target: Dict[str, Any], source: Dict[str, Any]) -> None:
    """Copy non-blank values from source into target, one level of sections deep."""
    for key, value in source.items():
        if key in SECTIONS and isinstance(value, dict):
            for name, item in value.items():
                item = _blank_to_none(item)
                if item is not None:
                    target[key][name] = item
            continue
        value = _blank_to_none(value)
        if value is not None:
            target[key] = value


def _transform_config(obj: Any) -> Any:
    """
    Recursively transform the configuration object:
    - Convert kebab-case keys to snake_case
    - Replace ${VAR:default} patterns with environment variables (supports nested substitution)
    """
    if isinstance(obj, dict):
        transformed = {}
        for key, value in obj.items():
            # Convert kebab-case to snake_case
            snake_key = key.replace("-", "_")
            # Recursively transform the value
            transformed[snake_key] = _transform_config(value)
        return transformed
    elif isinstance(obj, list):
        # Transform each item in the list
        return [_transform_config(item) for item in obj]
    elif isinstance(obj, str):
        # Handle environment variable substitution
        return _substitute_env_vars(obj)
    else:
        # Return primitive types as-is
        return obj


def _substitute_env_vars(value: str, visited_vars: set = None) -> str:
    """
    Replace ${VAR:default} patterns with environment variables or default values.
    Supports nested variable substitution with circular reference detection.

    Examples:
        ${MPEMBA_PRESET} -> os.getenv('MPEMBA_PRESET', '')
        ${MPEMBA_EPSILON:1e-5} -> os.getenv('MPEMBA_EPSILON', '1e-5')
        ${MPEMBA_TAU_C_PS:${TAU_C_PS}} -> tries MPEMBA_TAU_C_PS first, then TAU_C_PS
        ${VAR1:${VAR2:${VAR3:fallback}}} -> tries VAR1, then VAR2, then VAR3, then uses 'fallback'

    Args:
        value: The string containing variable patterns to substitute
        visited_vars: Set of variable names being processed (for circular reference detection)

    Returns:
        String with all variable patterns substituted

    Raises:
        ValueError: If a circular reference is detected in variable substitution
    """
    if visited_vars is None:
        visited_vars = set()

    result = value
    max_iterations = 64
    iteration = 0

    while iteration < max_iterations:
        iteration += 1
        start = result.rfind("${")
        if start == -1:
            break  # No more patterns

        # Parse variable name until ':' or '}'
        name_start = start + 2
        i = name_start
        while i < len(result) and result[i] not in ":}":
            i += 1
        if i >= len(result):
            break  # Incomplete pattern; leave as-is

        var_name = result[name_start:i]
        if not var_name:
            # Skip malformed and continue searching earlier occurrences
            result = result[:start] + result[start + 2 :]
            continue

        # Determine default value and closing brace position
        if result[i] == "}":
            default_value = ""
            close = i
        else:
            # We started from the last '${', so the next '}' is the matching close
            default_start = i + 1
            close = result.find("}", default_start)
            if close == -1:
                break  # Unmatched; leave as-is
            default_value = result[default_start:close]

        if var_name in visited_vars:
            raise ValueError(
                f"Circular reference detected in variable substitution: {var_name}"
            )

        env_value = os.getenv(var_name)
        replacement_source = env_value if env_value else default_value

        # Recursively resolve nested variables in the replacement source
        new_visited = visited_vars.copy()
        new_visited.add(var_name)
        replacement = _substitute_env_vars(replacement_source, new_visited)

        # Splice the resolved value back into the string
        result = result[:start] + replacement + result[close + 1 :]

    if iteration >= max_iterations:
        raise ValueError(
            f"Maximum substitution iterations exceeded. Possible complex circular reference in: {value}"
        )

    return result


def _parse_bool(value: Any, name: str) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("true", "1", "yes", "on"):
        return True
    if text in ("false", "0", "no", "off"):
        return False
    raise ConfigurationError(f"Invalid boolean for {name}: {value}")


def _parse_float(value: Any, name: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"Invalid number for {name}: {value}")


def _parse_int(value: Any, name: str) -> int:
    number = _parse_float(value, name)
    if not number.is_integer():
        raise ConfigurationError(f"Invalid integer for {name}: {value}")
    return int(number)


def _parse_channels(value: Any) -> Tuple[str, ...]:
    """
    Parse a channel selection into a tuple.

    Supports a comma-separated string ("dipolar,csa") or a list.
    """
    if isinstance(value, str):
        entries = value.split(",")
    else:
        entries = list(value)
    return tuple(entry.strip() for entry in entries if str(entry).strip())


def _dict_to_config(config_dict: Dict[str, Any]) -> ExperimentConfig:
    """
    Convert a merged dictionary to a typed ExperimentConfig object.
    """
    system = config_dict["system"]
    bath = config_dict["bath"]
    grid = config_dict["time_grid"]

    return ExperimentConfig(
        preset=str(config_dict["preset"]),
        theta_degrees=_parse_float(config_dict["theta_degrees"], "theta-degrees"),
        metric=str(config_dict["metric"]),
        near_state=str(config_dict["near_state"]),
        coupling=str(config_dict["coupling"]),
        channels=_parse_channels(config_dict["channels"]),
        spectral_mode=str(config_dict["spectral_mode"]),
        dimensionless=_parse_bool(config_dict["dimensionless"], "dimensionless"),
        rescale_by_epsilon=_parse_bool(
            config_dict["rescale_by_epsilon"], "rescale-by-epsilon"
        ),
        output_path=str(config_dict["output_path"]),
        system=SystemSettings(
            larmor_frequency_mhz=_parse_float(
                system["larmor_frequency_mhz"], "larmor-frequency-mhz"
            ),
            offset_hz=_parse_float(system["offset_hz"], "offset-hz"),
            j_coupling_hz=_parse_float(system["j_coupling_hz"], "j-coupling-hz"),
            epsilon=_parse_float(system["epsilon"], "epsilon"),
        ),
        bath=BathSettings(
            dipolar_coupling_khz=_parse_float(
                bath["dipolar_coupling_khz"], "dipolar-coupling-khz"
            ),
            dipolar_unit=str(bath["dipolar_unit"]),
            correlation_time_ps=_parse_float(
                bath["correlation_time_ps"], "correlation-time-ps"
            ),
            csa_khz=_parse_float(bath["csa_khz"], "csa-khz"),
            include_cross_correlation=_parse_bool(
                bath["include_cross_correlation"], "include-cross-correlation"
            ),
            extreme_narrowing_threshold=_parse_float(
                bath["extreme_narrowing_threshold"], "extreme-narrowing-threshold"
            ),
        ),
        time_grid=TimeGridSettings(
            t_min=_parse_float(grid["t_min"], "t-min"),
            t_max=_parse_float(grid["t_max"], "t-max"),
            points=_parse_int(grid["points"], "points"),
            spacing=str(grid["spacing"]),
            include_origin=_parse_bool(grid["include_origin"], "include-origin"),
        ),
    )
