from .operators import (
    ATOL,
    identity,
    spin_operator,
    spin_vector,
    total_z,
    rank_two_tensor,
    spherical_tensor,
    csa_spherical_tensor,
    rotation_pulse,
    conjugate,
    commutator,
    allclose,
)
from .coherence import (
    COHERENCE_SIGN,
    ORDERS,
    CoherenceComponent,
    magnetic_numbers,
    coherence_order_matrix,
    coherence_decompose,
    coherence_component,
)
