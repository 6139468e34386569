"""Steady-state entanglement engine for an atom-assisted opto-electro-mechanical
system: linearized 10-mode fluctuation dynamics, Lyapunov steady-state
covariance, and logarithmic negativity over parameter sweeps."""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    ParameterError,
    SimulationError,
    SingularityError,
    StabilityError,
    UnphysicalCovarianceError,
)
from .model import (
    DerivedQuantities,
    SteadyState,
    SystemParameters,
    derive,
    drive_amplitudes,
    effective_atom_number,
    solve_steady_state,
    solve_steady_state_bare,
    thermal_occupation,
)
from .dynamics import (
    StabilityReport,
    build_diffusion,
    build_drift,
    is_stable,
    solve_lyapunov,
)
from .gaussian import (
    BIPARTITE_PAIRS,
    BOSONIC_PAIRS,
    BipartitePair,
    LogNegativity,
    bosonic_block_determinants,
    extract_bipartite,
    log_negativity,
    normalize_pair_tag,
    symmetry_defect,
)
from .sweep import (
    PRESET_NAMES,
    PointRecord,
    SweepResult,
    SweepSpec,
    evaluate_point,
    preset,
    run_sweep,
    write_csv,
)
from .verify import (
    IntegrationConfig,
    integrate_covariance,
    lyapunov_bruteforce,
    make_tmsv,
)

__all__ = [
    "BIPARTITE_PAIRS",
    "BOSONIC_PAIRS",
    "BipartitePair",
    "ConvergenceError",
    "DerivedQuantities",
    "IntegrationConfig",
    "LogNegativity",
    "PRESET_NAMES",
    "ParameterError",
    "PointRecord",
    "SimulationError",
    "SingularityError",
    "StabilityError",
    "StabilityReport",
    "SteadyState",
    "SweepResult",
    "SweepSpec",
    "SystemParameters",
    "UnphysicalCovarianceError",
    "bosonic_block_determinants",
    "build_diffusion",
    "build_drift",
    "derive",
    "drive_amplitudes",
    "effective_atom_number",
    "evaluate_point",
    "extract_bipartite",
    "integrate_covariance",
    "is_stable",
    "log_negativity",
    "lyapunov_bruteforce",
    "make_tmsv",
    "normalize_pair_tag",
    "preset",
    "run_sweep",
    "solve_lyapunov",
    "solve_steady_state",
    "solve_steady_state_bare",
    "symmetry_defect",
    "thermal_occupation",
    "write_csv",
]
