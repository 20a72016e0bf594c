from .distances import (
    METRICS,
    trace_distance,
    relative_entropy,
    free_energy_gap,
    metric_function,
)
from .crossing import (
    CLASSIFICATIONS,
    MpembaReport,
    metric_curve,
    detect_crossing,
    classify,
)
