"""Contact-potential reconstruction and electrostatic background subtraction.

In two-plate force experiments the applied voltage V_a(d) that minimizes the
force drifts with separation when the surfaces carry a work-function
gradient.  This package fits the observed logarithmic V_a(d), reconstructs
the weighted contact potential V_c(d) from the force-minimization condition,
evaluates the residual electrostatic background force left at the minimizing
voltage, and subtracts it from measured force curves.
"""

from .analysis import (
    LogToyCapacitance,
    PowerLawFit,
    analytic_log_model,
    fit_power_law,
    local_loglog_slope,
    offset_invariance_check,
)
from .capacitance import (
    VACUUM_PERMITTIVITY,
    CapacitanceModel,
    DerivativeMode,
    GeometryKind,
    PlateGeometry,
    capacitance,
    capacitance_derivative,
    central_derivative,
    effective_gap,
    richardson_derivative,
)
from .dataio import load_force_measurements, load_va_measurements, write_csv
from .errors import (
    ConfigError,
    ContactBgError,
    DataError,
    DegenerateDesignError,
    DomainError,
    InsufficientDataError,
    MixedSignError,
    NumericError,
    RangeError,
)
from .force import (
    ForceCurve,
    Provenance,
    SignConvention,
    background_curve,
    background_identity_gap,
    correct_measured_force,
    electrostatic_energy,
    electrostatic_force_general,
    minimized_background_force,
)
from .pipeline import (
    PipelineConfig,
    PipelineResult,
    build_config,
    parse_config,
    run_pipeline,
    write_outputs,
)
from .profiles import (
    Extrapolation,
    LogFit,
    ParametricVa,
    SurfaceModel,
    TabulatedVa,
    VaProfile,
    effective_potential_from_surface_model,
    evaluate_va,
    fit_log_profile,
)
from .solver import (
    IntegratorStats,
    VcSolution,
    minimization_residual,
    residual_scale,
    solve_vc,
)
from .verify import CheckResult, run_verification

__version__ = "0.1.0"
