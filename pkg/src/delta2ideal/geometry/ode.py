"""The first-order system for the shape-operator entries along e3.

State is (alpha, beta, gamma) with mu = alpha + gamma on the ideal slice;
a free-mu variant (mu carried as a fourth component with mu' = 0) exists
so tests can watch the ideality defect grow off the slice.  The stepper
is an embedded Dormand-Prince 5(4) pair with PI step-size control and
hard guards for the beta singularity and finite-time blow-up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

STOP_RANGE_END = "range-end"
STOP_BETA_SINGULAR = "beta-singular"
STOP_BLOW_UP = "blow-up"
STOP_STEP_UNDERFLOW = "step-underflow"

DEFAULT_EPS_BETA = 1e-6
DEFAULT_BLOW_UP = 1e8
DEFAULT_MIN_STEP = 1e-12


class BetaSingular(ValueError):
    """The right-hand side was evaluated at beta = 0."""


@dataclass(frozen=True)
class FrameState:
    """Shape-operator entries at one arc-length parameter value."""

    s: float
    alpha: float
    beta: float
    gamma: float
    mu: float

    @classmethod
    def ideal(cls, s: float, alpha: float, beta: float, gamma: float) -> "FrameState":
        return cls(s=s, alpha=alpha, beta=beta, gamma=gamma, mu=alpha + gamma)

    def ideal_defect(self) -> float:
        return abs(self.alpha + self.gamma - self.mu)


@dataclass
class Trajectory:
    """Accepted samples of one integration, strictly increasing in s."""

    samples: list[FrameState]
    stop_reason: str
    tol: float
    accepted: int = 0
    rejected: int = 0
    free_mu: bool = False
    mean_step: float = field(init=False, default=0.0)

    def __post_init__(self):
        if len(self.samples) > 1:
            span = self.samples[-1].s - self.samples[0].s
            self.mean_step = span / (len(self.samples) - 1)

    def __len__(self) -> int:
        return len(self.samples)


def rhs_2hopf(state: FrameState) -> tuple[float, float, float]:
    """Right-hand sides for (alpha', beta', gamma') on the ideal slice.

    mu is identified with alpha + gamma throughout; beta = 0 is a genuine
    singularity of the gamma equation and raises.
    """
    if state.beta == 0.0:
        raise BetaSingular("right-hand side evaluated at beta = 0")
    a, b, g = state.alpha, state.beta, state.gamma
    mu = a + g
    da = b * (a + g - 3.0 * mu)
    db = b * b + g * g + mu * (a - 2.0 * g) + 1.0
    dg = (g - mu) * (g * g - a * g - 1.0) / b + b * (2.0 * g + mu)
    return da, db, dg


def _rhs_ideal(y: np.ndarray) -> np.ndarray:
    a, b, g = y
    mu = a + g
    return np.array(
        [
            b * (a + g - 3.0 * mu),
            b * b + g * g + mu * (a - 2.0 * g) + 1.0,
            (g - mu) * (g * g - a * g - 1.0) / b + b * (2.0 * g + mu),
        ]
    )


def _rhs_free(y: np.ndarray) -> np.ndarray:
    a, b, g, mu = y
    return np.array(
        [
            b * (a + g - 3.0 * mu),
            b * b + g * g + mu * (a - 2.0 * g) + 1.0,
            (g - mu) * (g * g - a * g - 1.0) / b + b * (2.0 * g + mu),
            0.0,
        ]
    )


# Dormand-Prince 5(4) tableau; the fifth-order solution propagates.
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_ERR = (
    71 / 57600,
    0.0,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)


def integrate_2hopf(
    initial: FrameState,
    s_range: tuple[float, float],
    tol: float,
    *,
    eps_beta: float = DEFAULT_EPS_BETA,
    blow_up: float = DEFAULT_BLOW_UP,
    min_step: float = DEFAULT_MIN_STEP,
    fixed_step: float | None = None,
    free_mu: bool = False,
) -> Trajectory:
    """Adaptive integration with local error at most tol per unit step.

    Error is measured componentwise against the scale tol * (1 + |y|).
    Halts early with a stop reason when |beta| falls below eps_beta, any
    component exceeds blow_up, or step control underflows min_step.
    """
    s_lo, s_hi = s_range
    if not (s_hi > s_lo) or not math.isfinite(s_lo) or not math.isfinite(s_hi):
        raise ValueError(f"invalid s-range {s_range}")
    if not (tol > 0.0):
        raise ValueError(f"tolerance must be positive, got {tol}")
    if initial.beta == 0.0:
        raise BetaSingular("non-Hopf data requires beta != 0")
    if not free_mu and initial.ideal_defect() > 1e-12:
        raise ValueError("initial condition violates alpha + gamma = mu")

    rhs = _rhs_free if free_mu else _rhs_ideal
    if free_mu:
        y = np.array([initial.alpha, initial.beta, initial.gamma, initial.mu])
    else:
        y = np.array([initial.alpha, initial.beta, initial.gamma])

    def snapshot(s: float, y: np.ndarray) -> FrameState:
        if free_mu:
            return FrameState(s, y[0], y[1], y[2], y[3])
        return FrameState.ideal(s, y[0], y[1], y[2])

    samples = [snapshot(s_lo, y)]
    s = s_lo
    span = s_hi - s_lo
    h = fixed_step if fixed_step is not None else min(1e-3, span / 10.0)
    accepted = rejected = 0
    err_prev = 1.0
    k1 = rhs(y)

    def finish(reason: str) -> Trajectory:
        return Trajectory(
            samples=samples,
            stop_reason=reason,
            tol=tol,
            accepted=accepted,
            rejected=rejected,
            free_mu=free_mu,
        )

    while s < s_hi - 1e-15 * span:
        h = min(h, s_hi - s)
        if fixed_step is None and h < min_step:
            return finish(STOP_STEP_UNDERFLOW)
        stages = [k1]
        bad = False
        with np.errstate(all="ignore"):
            try:
                for row in _A[1:]:
                    yi = y + h * sum(a * ki for a, ki in zip(row, stages))
                    if abs(yi[1]) < 1e-300 or not np.all(np.isfinite(yi)):
                        bad = True
                        break
                    stages.append(rhs(yi))
            except (BetaSingular, FloatingPointError):
                bad = True
            if not bad:
                y_new = y + h * sum(bi * ki for bi, ki in zip(_B5, stages[:6]))
                err_vec = h * sum(ei * ki for ei, ki in zip(_ERR, stages))
                finite = np.all(np.isfinite(y_new)) and np.all(np.isfinite(err_vec))
        if bad or not finite:
            if fixed_step is not None:
                return finish(STOP_BLOW_UP)
            rejected += 1
            h *= 0.2
            continue
        scale = tol * (1.0 + np.abs(np.maximum(np.abs(y), np.abs(y_new))))
        err = float(np.max(np.abs(err_vec) / scale)) / h
        if fixed_step is not None or err <= 1.0:
            s += h
            y = y_new
            k1 = stages[6]
            accepted += 1
            samples.append(snapshot(s, y))
            if abs(y[1]) < eps_beta:
                return finish(STOP_BETA_SINGULAR)
            if float(np.max(np.abs(y))) > blow_up:
                return finish(STOP_BLOW_UP)
            if fixed_step is None:
                err = max(err, 1e-10)
                fac = 0.9 * err**-0.175 * err_prev**0.1
                err_prev = err
                h *= min(5.0, max(0.2, fac))
        else:
            rejected += 1
            h *= max(0.2, 0.9 * err**-0.25)
    return finish(STOP_RANGE_END)


def minimal_ruled_beta(s: float, beta0: float = 1.0) -> float:
    """Closed form on the alpha = gamma = mu = 0 slice: beta' = beta^2 + 1."""
    return math.tan(s + math.atan(beta0))
