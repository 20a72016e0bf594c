from .params import (
    MAX_EPSILON,
    SystemParams,
    BathParams,
    k0,
    epsilon_from_temperature,
    to_dimensionless,
)
from .hamiltonian import FRAMES, COUPLINGS, scalar_coupling, hamiltonian, thermal_state
from .spectral_density import (
    SPECTRAL_MODES,
    CHANNELS,
    spectral_density,
    linearized_rate,
    channel_amplitude,
    channel_rate,
    narrowing_diagnostic,
    resolve_channels,
)
from .superoperator import (
    vectorize,
    unvectorize,
    vector_index,
    left_multiplication,
    right_multiplication,
    sandwich,
    commutator_superoperator,
    dissipator,
    apply_superoperator,
)
from .liouvillian import csa_operator, build_liouvillian
