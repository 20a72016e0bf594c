from .sectors import (
    BASIS_LABELS,
    POPULATION_INDICES,
    ZERO_QUANTUM_INDICES,
    population_generator,
    zero_quantum_block,
    coherence_block_indices,
    block_leakage,
    coherence_closure,
    transition_rates,
    detailed_balance_residual,
)
from .modes import (
    stationary_density,
    ModeDecomposition,
    eigendecompose,
    overlaps,
    mode_contributions,
)
from .two_qubit import (
    OUTER_PAIR,
    INNER_PAIR,
    effective_pair_generator,
    two_qubit_generators,
)
from .reference import (
    reference_population_generator,
    reference_zero_quantum_block,
    reference_closure,
    reference_eigenvalues,
    reference_slow_mode,
)
