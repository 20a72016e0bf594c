from .read_config import (
    read_config,
    build_config,
    ExperimentConfig,
    SystemSettings,
    BathSettings,
    TimeGridSettings,
)
from .presets import PRESETS, DEFAULTS, DEFAULT_PRESET
from .validate_config import validate_config, NEAR_STATES, DIPOLAR_UNITS
