"""Numerical lab: ODE integration, curvature, and structure-equation checks."""

from .curvature import (
    DEFAULT_PHI,
    CurvatureReport,
    PhiStructure,
    batched_inequality_residuals,
    curvature_report,
    curvature_tensor,
    delta2_plane_grid,
    inequality_residual,
    random_orthonormal_planes,
    random_symmetric_operators,
    ricci_tensor,
    scalar_tau,
    sectional_curvature,
    shape_operator,
)
from .ode import (
    BetaSingular,
    FrameState,
    Trajectory,
    integrate_2hopf,
    minimal_ruled_beta,
    rhs_2hopf,
    STOP_BETA_SINGULAR,
    STOP_BLOW_UP,
    STOP_RANGE_END,
    STOP_STEP_UNDERFLOW,
)
from .residuals import (
    ConnectionCoeffs,
    Thresholds,
    TrajectoryReport,
    check_trajectory,
    codazzi_residual,
    gauss_residual,
)
from .trajio import (
    TrajectoryFormatError,
    load_thresholds,
    read_trajectory_csv,
    write_report_json,
    write_trajectory_csv,
)

__all__ = [
    "BetaSingular",
    "ConnectionCoeffs",
    "CurvatureReport",
    "DEFAULT_PHI",
    "FrameState",
    "PhiStructure",
    "STOP_BETA_SINGULAR",
    "STOP_BLOW_UP",
    "STOP_RANGE_END",
    "STOP_STEP_UNDERFLOW",
    "Thresholds",
    "Trajectory",
    "TrajectoryFormatError",
    "TrajectoryReport",
    "batched_inequality_residuals",
    "check_trajectory",
    "codazzi_residual",
    "curvature_report",
    "curvature_tensor",
    "delta2_plane_grid",
    "gauss_residual",
    "inequality_residual",
    "integrate_2hopf",
    "load_thresholds",
    "minimal_ruled_beta",
    "random_orthonormal_planes",
    "random_symmetric_operators",
    "read_trajectory_csv",
    "rhs_2hopf",
    "ricci_tensor",
    "scalar_tau",
    "sectional_curvature",
    "shape_operator",
    "write_report_json",
    "write_trajectory_csv",
]
