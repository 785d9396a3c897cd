"""Correlative capacity of composite quantum states.

Majorization lattice operations on spectra, the least disordered separable
state compatible with a set of marginals, closed-form two-qubit optima, and
LOCC monotones for pure states.
"""

from .composite import (
    CompositeReport,
    analyze,
    build_optimal_separable,
    correlation_information,
    gram_matrix,
    is_classically_correlated,
    max_separable_correlation,
    partition_correlation,
)
from .ensemble import Ensemble, realize_ensemble, schur_horn, schur_horn_unitary
from .locc import (
    entropy_sum_minus_max,
    local_measure,
    monotonicity_trial,
    separable_capacity,
)
from .majorization import MajOrder, canonicalize, compare, infimum, shannon_entropy, supremum
from .qstate import (
    DensityMatrix,
    PureState,
    partial_trace,
    partial_transpose,
    pinch,
    relative_entropy,
    spectral,
    spectrum,
    tensor,
    validate,
    von_neumann_entropy,
)
from .sampling import SeededStream
from .twoqubit import (
    QubitPair,
    feline_state,
    fig1_curve,
    hierarchy,
    sigma_classical,
    sigma_entangled,
    sigma_separable,
)

__version__ = "0.1.0"
