"""Quantum-corrected Floquet dynamics for a driven spin coupled to a
single field mode.

Four routes to the excited-spin probability: exact evolution in a truncated
number basis, a periodic-mode (Floquet) analysis of the semiclassical limit,
a closed-form field-backreaction approximation built on those modes, and
direct integration of the quantum-corrected mode equations.
"""

from ._kernels import BACKEND
from .errors import (
    ConfigError,
    GridError,
    NumericError,
    QcfdError,
    ResonanceError,
    StepSizeError,
    TruncationError,
    UnsupportedRegimeError,
)
from .fbrwa import (
    CoefficientTables,
    FBRWAResult,
    QCFDState,
    fbrwa_field_overlap,
    fbrwa_prepare,
    lambda_eff,
    p_excited_closed_form,
    p_excited_fbrwa,
    qcfd_coefficient_tables,
    qcfd_integrate,
)
from .fockspace import (
    FieldStateSpec,
    FockVector,
    OperatorMatrix,
    annihilation_matrix,
    build_field_state,
    displaced_fock_overlap,
    displacement_matrix,
    laguerre,
    required_dim,
)
from .floquet import (
    FloquetSolution,
    floquet_solve,
    floquet_state_at,
    jcm_floquet_solution,
    monodromy,
    semiclassical_hamiltonian,
)
from .fullmodel import (
    ExactPropagator,
    ModelParams,
    SpinFieldVector,
    build_hamiltonian,
    evolve_exact,
    excited_probability,
    get_propagator,
)
from .harness import (
    CompareMetrics,
    ScenarioConfig,
    TimeSeries,
    build_scenario,
    compare,
    emit,
    make_field_spec,
    parse_config_text,
    parse_csv,
    preset_scenarios,
    render_csv,
    render_svg,
    run_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CoefficientTables",
    "CompareMetrics",
    "ConfigError",
    "ExactPropagator",
    "FBRWAResult",
    "FieldStateSpec",
    "FloquetSolution",
    "FockVector",
    "GridError",
    "ModelParams",
    "NumericError",
    "OperatorMatrix",
    "QCFDState",
    "QcfdError",
    "ResonanceError",
    "ScenarioConfig",
    "SpinFieldVector",
    "StepSizeError",
    "TimeSeries",
    "TruncationError",
    "UnsupportedRegimeError",
    "annihilation_matrix",
    "build_field_state",
    "build_hamiltonian",
    "build_scenario",
    "compare",
    "displaced_fock_overlap",
    "displacement_matrix",
    "emit",
    "evolve_exact",
    "excited_probability",
    "fbrwa_field_overlap",
    "fbrwa_prepare",
    "floquet_solve",
    "floquet_state_at",
    "get_propagator",
    "jcm_floquet_solution",
    "laguerre",
    "lambda_eff",
    "make_field_spec",
    "monodromy",
    "p_excited_closed_form",
    "p_excited_fbrwa",
    "parse_config_text",
    "parse_csv",
    "preset_scenarios",
    "qcfd_coefficient_tables",
    "qcfd_integrate",
    "render_csv",
    "render_svg",
    "required_dim",
    "run_scenario",
    "semiclassical_hamiltonian",
    "__version__",
]
