"""Phase-pair entanglement measure for bipartite quantum states.

Three independent routes to the same quantity: direct density-matrix
coefficients, Fourier components of a relative-phase operator expectation,
and simulated Bell-state projections.  A derivative-free maximizer takes
the supremum over local unitaries, cross-validated against I-concurrence
and the generalized concurrence.
"""

from .linalg import (
    DEFAULT_TOL,
    BipartiteDims,
    DensityCheck,
    coeff_quadruples,
    is_density_operator,
    kron,
    level_pair,
    matrices_close,
    pair_index,
    partial_trace,
)
from .states import (
    BellState,
    DensityOperator,
    PureState,
    SchmidtDecomposition,
    bell_vector,
    haar_unitary,
    max_entangled,
    product_state,
    pure_to_density,
    random_density,
    random_product,
    random_pure,
    schmidt,
)
from .measures import (
    CONCURRENCE_MATCHED,
    PAPER_2X3,
    PRESET_N2,
    UNNORMALIZED,
    GammaBreakdown,
    GammaTerm,
    MeasureConfig,
    concurrence_2x3,
    concurrence_general,
    gamma,
    gamma_pure,
    gamma_schmidt,
    i_concurrence,
)
from .local_unitary import (
    OVERSHOOT_MARGIN,
    ConjectureReport,
    ConjectureRow,
    ConjectureSummary,
    LocalUnitary,
    OptimizerOptions,
    SupremumReport,
    UnitaryParams,
    apply_local,
    apply_local_density,
    conjecture_sweep,
    identity_local,
    maximize_gamma,
    random_local_unitary,
    schmidt_rotation,
    ua_theta_phi,
    ub_theta_phi,
    unitary_from_flat,
    zero_a11_a23,
)
from .phase_povm import (
    C_POVM,
    FourierComponent,
    PhaseAssignment,
    delta_a,
    delta_b,
    delta_joint,
    fourier_component,
    gamma_via_povm,
)
from .bell import (
    NAMED_BELL_2X2,
    NAMED_BELL_2X3,
    BellFamily,
    CoefficientTarget,
    MeasurementPlan,
    ReducedPlan,
    ShotGammaEstimate,
    ShotTerm,
    enumerate_bell,
    plan_measurement,
    project,
    recover_coefficient,
    shot_error_table,
    simulate_shots,
)
from .statefile import (
    QSTATE_EXT,
    StateFileError,
    load_local_unitary,
    load_state,
    save_state,
    state_from_dict,
    state_to_dict,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "BipartiteDims",
    "DensityCheck",
    "coeff_quadruples",
    "is_density_operator",
    "kron",
    "level_pair",
    "matrices_close",
    "pair_index",
    "partial_trace",
    "BellState",
    "DensityOperator",
    "PureState",
    "SchmidtDecomposition",
    "bell_vector",
    "haar_unitary",
    "max_entangled",
    "product_state",
    "pure_to_density",
    "random_density",
    "random_product",
    "random_pure",
    "schmidt",
    "CONCURRENCE_MATCHED",
    "PAPER_2X3",
    "PRESET_N2",
    "UNNORMALIZED",
    "GammaBreakdown",
    "GammaTerm",
    "MeasureConfig",
    "concurrence_2x3",
    "concurrence_general",
    "gamma",
    "gamma_pure",
    "gamma_schmidt",
    "i_concurrence",
    "OVERSHOOT_MARGIN",
    "ConjectureReport",
    "ConjectureRow",
    "ConjectureSummary",
    "LocalUnitary",
    "OptimizerOptions",
    "SupremumReport",
    "UnitaryParams",
    "apply_local",
    "apply_local_density",
    "conjecture_sweep",
    "identity_local",
    "maximize_gamma",
    "random_local_unitary",
    "schmidt_rotation",
    "ua_theta_phi",
    "ub_theta_phi",
    "unitary_from_flat",
    "zero_a11_a23",
    "C_POVM",
    "FourierComponent",
    "PhaseAssignment",
    "delta_a",
    "delta_b",
    "delta_joint",
    "fourier_component",
    "gamma_via_povm",
    "NAMED_BELL_2X2",
    "NAMED_BELL_2X3",
    "BellFamily",
    "CoefficientTarget",
    "MeasurementPlan",
    "ReducedPlan",
    "ShotGammaEstimate",
    "ShotTerm",
    "enumerate_bell",
    "plan_measurement",
    "project",
    "recover_coefficient",
    "shot_error_table",
    "simulate_shots",
    "QSTATE_EXT",
    "StateFileError",
    "load_local_unitary",
    "load_state",
    "save_state",
    "state_from_dict",
    "state_to_dict",
]
