"""Monogamy scores of bipartite quantum correlation measures and lower bounds on their violation."""

from .linalg import DensityMatrix, eigh, eigvalsh, kron, partial_trace, partial_transpose, trace_norm
from .measures import (
    DEFAULT_MEASURES,
    BipartiteCut,
    MeasureKind,
    MeasureValue,
    OptimizerSettings,
    QubitMeasurementBasis,
    binary_entropy,
    concurrence,
    eof_pure_cut,
    eof_two_qubit,
    evaluate,
    log_negativity,
    measured_mutual_information,
    mutual_information,
    negativity,
    normalized_purity,
    optimize_qubit_measurement,
    quantum_discord,
    tangle,
    tangle_pure_cut,
    von_neumann_entropy,
    work_deficit,
)
from .monogamy import (
    MonogamyRecord,
    PartitionSpec,
    bound_b,
    complementarity_x0,
    lower_bounds,
    monogamy_score,
    tripartite_complementarity,
    verify,
)
from .states import (
    GhzwParams,
    PureState,
    SeedSpec,
    basis_state,
    bell_state,
    dicke,
    ghz,
    ghz_w,
    haar_pure,
    haar_rank2_threequbit,
    largest_eig_analytic,
    reduced_qubit_analytic,
    w_state,
)

__version__ = "0.1.0"
