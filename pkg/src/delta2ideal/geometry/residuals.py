"""Codazzi and Gauss residuals along integrated trajectories.

The frame connection is rebuilt from the trajectory state through the
Case (b) identities (kappa_2 = 0, kappa_3 = gamma, kappa_1 from its
defining relation), directional derivatives transverse to the leaves
vanish by leaf invariance, and e3-derivatives come from the right-hand
sides of the state system.  Both residuals are therefore pointwise
algebraic in the sample; a clean sample sits at float roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curvature import DEFAULT_PHI, PhiStructure, curvature_report, curvature_tensor, shape_operator
from .ode import FrameState, Trajectory, rhs_2hopf

XI_VECTOR = np.array([1.0, 0.0, 0.0])


@dataclass(frozen=True)
class ConnectionCoeffs:
    """The three free connection functions in the adapted frame."""

    kappa1: float
    kappa2: float
    kappa3: float

    @classmethod
    def from_state(cls, state: FrameState) -> "ConnectionCoeffs":
        b, g, mu = state.beta, state.gamma, state.mu
        kappa1 = (b * b + 2.0 * g * g - mu * g - 1.0) / b
        return cls(kappa1=kappa1, kappa2=0.0, kappa3=g)


def _state_derivatives(state: FrameState) -> tuple[float, float, float, float]:
    """(alpha', beta', gamma', mu') from the ideal-slice right-hand sides."""
    da, db, dg = rhs_2hopf(state)
    return da, db, dg, da + dg


def _gamma_matrices(
    state: FrameState, kappas: ConnectionCoeffs
) -> list[np.ndarray]:
    """Connection matrices G[X][l, i] = <nabla_{e_X} e_i, e_l>."""
    b, g, mu = state.beta, state.gamma, state.mu
    k1, k2, k3 = kappas.kappa1, kappas.kappa2, kappas.kappa3
    G_xi = np.array(
        [
            [0.0, 0.0, -b],
            [0.0, 0.0, -k3],
            [b, k3, 0.0],
        ]
    )
    G_e2 = np.array(
        [
            [0.0, 0.0, -g],
            [0.0, 0.0, -k1],
            [g, k1, 0.0],
        ]
    )
    G_e3 = np.array(
        [
            [0.0, mu, 0.0],
            [-mu, 0.0, -k2],
            [0.0, k2, 0.0],
        ]
    )
    return [G_xi, G_e2, G_e3]


def _gamma_matrices_dot(state: FrameState, kappas: ConnectionCoeffs) -> list[np.ndarray]:
    """s-derivatives of the connection matrices along the trajectory."""
    b, g, mu = state.beta, state.gamma, state.mu
    da, db, dg, dmu = _state_derivatives(state)
    # kappa_1 = (b^2 + 2 g^2 - mu g - 1)/b by the defining relation
    num = b * b + 2.0 * g * g - mu * g - 1.0
    dnum = 2.0 * b * db + 4.0 * g * dg - dmu * g - mu * dg
    dk1 = (dnum * b - num * db) / (b * b)
    dk2 = 0.0
    dk3 = dg
    dG_xi = np.array(
        [
            [0.0, 0.0, -db],
            [0.0, 0.0, -dk3],
            [db, dk3, 0.0],
        ]
    )
    dG_e2 = np.array(
        [
            [0.0, 0.0, -dg],
            [0.0, 0.0, -dk1],
            [dg, dk1, 0.0],
        ]
    )
    dG_e3 = np.array(
        [
            [0.0, dmu, 0.0],
            [-dmu, 0.0, -dk2],
            [0.0, dk2, 0.0],
        ]
    )
    return [dG_xi, dG_e2, dG_e3]


def _shape_derivative(state: FrameState) -> np.ndarray:
    da, db, dg, dmu = _state_derivatives(state)
    return np.array(
        [
            [da, db, 0.0],
            [db, dg, 0.0],
            [0.0, 0.0, dmu],
        ]
    )


def _mutated(kappas: ConnectionCoeffs, mutate: dict[str, float] | None) -> ConnectionCoeffs:
    if not mutate:
        return kappas
    return ConnectionCoeffs(
        kappa1=kappas.kappa1 + mutate.get("kappa1", 0.0),
        kappa2=kappas.kappa2 + mutate.get("kappa2", 0.0),
        kappa3=kappas.kappa3 + mutate.get("kappa3", 0.0),
    )


def codazzi_residual(
    traj: Trajectory,
    index: int,
    phi: PhiStructure = DEFAULT_PHI,
    mutate: dict[str, float] | None = None,
) -> float:
    """Max-norm defect of the Codazzi equation over the three frame pairs.

    (nabla_X A)Y - (nabla_Y A)X = <X,xi> phi Y - <Y,xi> phi X - 2 <phi X,Y> xi
    """
    state = traj.samples[index]
    A = shape_operator(state)
    kappas = _mutated(ConnectionCoeffs.from_state(state), mutate)
    G = _gamma_matrices(state, kappas)
    dA = _shape_derivative(state)
    P = phi.matrix
    # covariant derivative of A along each frame direction, as a matrix
    covs = []
    for X in range(3):
        xA = dA if X == 2 else np.zeros((3, 3))
        covs.append(xA + G[X] @ A - A @ G[X])
    worst = 0.0
    for X, Y in ((0, 1), (0, 2), (1, 2)):
        lhs = covs[X][:, Y] - covs[Y][:, X]
        rhs = (
            (1.0 if X == 0 else 0.0) * P[:, Y]
            - (1.0 if Y == 0 else 0.0) * P[:, X]
            - 2.0 * P[Y, X] * XI_VECTOR
        )
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def gauss_residual(
    traj: Trajectory,
    index: int,
    phi: PhiStructure = DEFAULT_PHI,
    mutate: dict[str, float] | None = None,
) -> float:
    """Max-norm defect between connection curvature and the Gauss equation.

    The intrinsic tensor uses R(e_i, e_j) = D_i G_j - D_j G_i + [G_i, G_j]
    - G over the bracket, with frame brackets [e_i, e_j] = nabla_i e_j -
    nabla_j e_i read from the connection itself.
    """
    state = traj.samples[index]
    A = shape_operator(state)
    kappas = _mutated(ConnectionCoeffs.from_state(state), mutate)
    G = _gamma_matrices(state, kappas)
    dG = _gamma_matrices_dot(state, kappas)
    R_gauss = curvature_tensor(A, phi)
    worst = 0.0
    for i, j in ((0, 1), (0, 2), (1, 2)):
        Di_Gj = dG[j] if i == 2 else np.zeros((3, 3))
        Dj_Gi = dG[i] if j == 2 else np.zeros((3, 3))
        bracket = G[i][:, j] - G[j][:, i]
        over_bracket = sum(bracket[l] * G[l] for l in range(3))
        R_intr = Di_Gj - Dj_Gi + G[i] @ G[j] - G[j] @ G[i] - over_bracket
        # R_gauss[i, j, k, l] = <R(e_i,e_j) e_k, e_l>; matrix column k, row l
        R_ref = R_gauss[i, j].T
        worst = max(worst, float(np.max(np.abs(R_intr - R_ref))))
    return worst


@dataclass
class Thresholds:
    ideal: float = 1e-8
    codazzi: float = 1e-8
    gauss: float = 1e-8
    slice_defect: float | None = None


@dataclass
class TrajectoryReport:
    verdict: str  # PASS | FAIL | VACUOUS
    n_samples: int
    stop_reason: str
    max_ideal_residual: float
    max_codazzi_residual: float
    max_gauss_residual: float
    max_slice_defect: float
    thresholds: Thresholds
    reports: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "n_samples": self.n_samples,
            "stop_reason": self.stop_reason,
            "max_ideal_residual": self.max_ideal_residual,
            "max_codazzi_residual": self.max_codazzi_residual,
            "max_gauss_residual": self.max_gauss_residual,
            "max_slice_defect": self.max_slice_defect,
            "thresholds": {
                "ideal": self.thresholds.ideal,
                "codazzi": self.thresholds.codazzi,
                "gauss": self.thresholds.gauss,
            },
        }


def check_trajectory(
    traj: Trajectory,
    phi: PhiStructure = DEFAULT_PHI,
    thresholds: Thresholds | None = None,
) -> TrajectoryReport:
    """Per-sample curvature reports plus trajectory-wide maxima and verdict."""
    thresholds = thresholds or Thresholds()
    if len(traj) == 0:
        return TrajectoryReport(
            verdict="VACUOUS",
            n_samples=0,
            stop_reason=traj.stop_reason,
            max_ideal_residual=0.0,
            max_codazzi_residual=0.0,
            max_gauss_residual=0.0,
            max_slice_defect=0.0,
            thresholds=thresholds,
        )
    reports = []
    max_ideal = max_cod = max_gauss = max_slice = 0.0
    for i, state in enumerate(traj.samples):
        rep = curvature_report(state, phi)
        rep.codazzi_residual = codazzi_residual(traj, i, phi)
        rep.gauss_residual = gauss_residual(traj, i, phi)
        reports.append(rep)
        max_ideal = max(max_ideal, abs(rep.ideal_residual))
        max_cod = max(max_cod, rep.codazzi_residual)
        max_gauss = max(max_gauss, rep.gauss_residual)
        max_slice = max(max_slice, state.ideal_defect())
    ok = (
        max_ideal <= thresholds.ideal
        and max_cod <= thresholds.codazzi
        and max_gauss <= thresholds.gauss
    )
    if thresholds.slice_defect is not None:
        ok = ok and max_slice <= thresholds.slice_defect
    return TrajectoryReport(
        verdict="PASS" if ok else "FAIL",
        n_samples=len(traj),
        stop_reason=traj.stop_reason,
        max_ideal_residual=max_ideal,
        max_codazzi_residual=max_cod,
        max_gauss_residual=max_gauss,
        max_slice_defect=max_slice,
        thresholds=thresholds,
        reports=reports,
    )
