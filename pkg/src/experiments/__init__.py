from .report import VERSION, METRIC_COLUMNS, trajectory_frame
from .runner import ExperimentResult, run_experiment
from .validation import (
    FAULTS,
    CheckResult,
    ValidationSummary,
    InvariantBattery,
    validate_suite,
)
