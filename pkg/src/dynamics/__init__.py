from .states import (
    validate_density_matrix,
    populations,
    density_from_populations,
    preparation_sequence,
    prepare_theta_state,
    pfg_dephase,
    near_state,
    far_state,
    near_state_genuine,
    far_state_by_pulse,
)
from .propagation import (
    SPACINGS,
    Trajectory,
    time_grid,
    generator_fingerprint,
    propagate_vector,
    propagate,
    propagate_by_modes,
)
from .analytic import (
    OUTER_RATE,
    INNER_RATE,
    theta_state_populations,
    far_state_populations,
    genuine_near_state_populations,
    analytic_trace_distances,
    theta_crossing_time,
    genuine_crossing_time_estimate,
    analytic_trajectory,
)
