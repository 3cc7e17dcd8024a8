"""Quantum summation (amplitude estimation): exact gate-level simulation,
the closed-form outcome law, and exhaustive verification of its worst- and
average-case probabilistic error bounds."""

from .boolfn import (
    BooleanFunction,
    Measure,
    SigmaValue,
    class_weight,
    class_weights,
    first_moment,
    sigma_of,
)
from .bounds import (
    EIGHT_OVER_PI_SQ,
    FOUR_OVER_PI_SQ,
    ErrorRecord,
    Setting,
    avg_probabilistic_error,
    c_bound,
    error_at_level,
    g_func,
    h_func,
    level_errors,
    queries_for_epsilon,
    v_func,
    v_inverse,
    w_func,
    wa4_upper_bound,
    wan4_lower_bound,
    worst_probabilistic_error,
    worst_probabilistic_errors,
)
from .closedform import (
    CeilFloorPair,
    OutcomeDistribution,
    ceil_floor_pair,
    dirichlet_kernel_sq,
    distribution,
    kernel,
    median_amplify,
    output_grid,
    output_value,
    sample,
    sigma_is_integral,
)
from .simulator import (
    GroverSpectrum,
    MeasurementRecord,
    Primitive,
    QSResult,
    QubitLayout,
    StateVector,
    apply_grover,
    apply_lambda,
    apply_primitive,
    apply_standard_query,
    grover_eigenvectors,
    grover_spectrum,
    measure_index,
    run_qs,
)

__version__ = "0.1.0"

__all__ = [
    "BooleanFunction",
    "Measure",
    "SigmaValue",
    "class_weight",
    "class_weights",
    "first_moment",
    "sigma_of",
    "EIGHT_OVER_PI_SQ",
    "FOUR_OVER_PI_SQ",
    "ErrorRecord",
    "Setting",
    "avg_probabilistic_error",
    "c_bound",
    "error_at_level",
    "g_func",
    "h_func",
    "level_errors",
    "queries_for_epsilon",
    "v_func",
    "v_inverse",
    "w_func",
    "wa4_upper_bound",
    "wan4_lower_bound",
    "worst_probabilistic_error",
    "worst_probabilistic_errors",
    "CeilFloorPair",
    "OutcomeDistribution",
    "ceil_floor_pair",
    "dirichlet_kernel_sq",
    "distribution",
    "kernel",
    "median_amplify",
    "output_grid",
    "output_value",
    "sample",
    "sigma_is_integral",
    "GroverSpectrum",
    "MeasurementRecord",
    "Primitive",
    "QSResult",
    "QubitLayout",
    "StateVector",
    "apply_grover",
    "apply_lambda",
    "apply_primitive",
    "apply_standard_query",
    "grover_eigenvectors",
    "grover_spectrum",
    "measure_index",
    "run_qs",
    "__version__",
]
