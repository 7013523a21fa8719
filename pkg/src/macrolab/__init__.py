"""Macroscopicity and geometric entanglement of pure N-qubit states.

The package computes the maximal variance of additive single-site spin
observables (macroscopicity) and the distance to the nearest product state
(geometric entanglement), exactly where feasible and via certified bounds
elsewhere, for named states, interpolation families, extremal constructions,
and seeded random ensembles.
"""

__version__ = "0.1.0"

from .config import (
    DenseCapExceeded,
    OrthogonalStartError,
    dense_cap,
    set_dense_cap,
)
from .ensembles import (
    RngStream,
    haar_random_state,
    random_linear_chain,
    random_physical_state,
    random_symmetric_state,
    random_two_qubit_unitary,
)
from .extremal import (
    EtaMaxSpec,
    eta_max_bound,
    eta_max_spec,
    realize_symmetric,
    xi_geometric_analytic,
    xi_macroscopicity_analytic,
)
from .geometric import (
    GeomResult,
    SeparableProduct,
    closest_separable_step,
    geometric_entanglement,
    geometric_entanglement_symmetric,
    product_overlap,
)
from .harness import (
    ExperimentConfig,
    Row,
    StatRecord,
    emit,
    emit_bounds_curves,
    load_config,
    parse_rows,
    run_experiment,
)
from .macroscopicity import (
    IndexPEstimate,
    MacroResult,
    beta_lower_bound,
    estimate_index_p,
    macroscopicity_exact,
    macroscopicity_symmetric,
    normalize,
    vcm_upper_bound,
)
from .observables import (
    SpinOrientation,
    SymmetricVcm,
    Vcm,
    additive_variance,
    build_symmetric_vcm,
    build_vcm,
    pauli_correlation,
    pauli_expectation,
)
from .states import (
    MajoranaPoints,
    PureState,
    SymmetricState,
    bell,
    bell_product,
    dicke,
    from_majorana,
    ghz,
    ghz_ones,
    majorana_points,
    ones,
    tensor,
    to_dense,
    xi_state,
    zeros,
)
