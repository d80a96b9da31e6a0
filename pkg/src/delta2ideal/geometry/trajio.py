"""Trajectory CSV interchange and report JSON."""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .curvature import DEFAULT_PHI
from .ode import Trajectory, FrameState, STOP_RANGE_END
from .residuals import ConnectionCoeffs, Thresholds, TrajectoryReport, check_trajectory

CSV_COLUMNS = [
    "s",
    "alpha",
    "beta",
    "gamma",
    "mu",
    "kappa1",
    "K12",
    "K13",
    "K23",
    "tau",
    "delta2",
    "H",
    "ideal_residual",
    "codazzi_residual",
    "gauss_residual",
]

STATE_COLUMNS = CSV_COLUMNS[:5]


class TrajectoryFormatError(ValueError):
    """CSV is missing required columns or has unparseable rows."""


def write_trajectory_csv(traj: Trajectory, path: str | Path) -> TrajectoryReport:
    """Emit one row per sample with curvature and residual columns.

    Floats are written with repr (shortest round-trip), so identical
    inputs give byte-identical files.
    """
    report = check_trajectory(traj, DEFAULT_PHI)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for state, rep in zip(traj.samples, report.reports):
            kappa1 = ConnectionCoeffs.from_state(state).kappa1
            writer.writerow(
                [
                    repr(state.s),
                    repr(state.alpha),
                    repr(state.beta),
                    repr(state.gamma),
                    repr(state.mu),
                    repr(kappa1),
                    repr(rep.K12),
                    repr(rep.K13),
                    repr(rep.K23),
                    repr(rep.tau),
                    repr(rep.delta2),
                    repr(rep.H),
                    repr(rep.ideal_residual),
                    repr(rep.codazzi_residual),
                    repr(rep.gauss_residual),
                ]
            )
    return report


def read_trajectory_csv(path: str | Path) -> Trajectory:
    """Rebuild a trajectory from the five state columns of a CSV."""
    path = Path(path)
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise TrajectoryFormatError(f"{path}: empty file") from None
            header = [h.strip() for h in header]
            missing = [c for c in STATE_COLUMNS if c not in header]
            if missing:
                raise TrajectoryFormatError(f"{path}: missing columns {missing}")
            idx = {c: header.index(c) for c in STATE_COLUMNS}
            samples = []
            for lineno, row in enumerate(reader, start=2):
                if not row or (len(row) == 1 and not row[0].strip()):
                    continue
                try:
                    samples.append(
                        FrameState(
                            s=float(row[idx["s"]]),
                            alpha=float(row[idx["alpha"]]),
                            beta=float(row[idx["beta"]]),
                            gamma=float(row[idx["gamma"]]),
                            mu=float(row[idx["mu"]]),
                        )
                    )
                except (ValueError, IndexError) as exc:
                    raise TrajectoryFormatError(
                        f"{path}: bad row {lineno}: {exc}"
                    ) from None
    except OSError as exc:
        raise TrajectoryFormatError(f"{path}: {exc}") from None
    return Trajectory(samples=samples, stop_reason=STOP_RANGE_END, tol=float("nan"))


def write_report_json(report: TrajectoryReport, path: str | Path) -> None:
    Path(path).write_text(json.dumps(report.to_json(), indent=2) + "\n")


def load_thresholds(path: str | Path | None) -> Thresholds:
    """Thresholds from a key = value file; missing keys keep defaults."""
    thresholds = Thresholds()
    if path is None:
        return thresholds
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        if not hasattr(thresholds, key):
            raise TrajectoryFormatError(f"unknown threshold {key!r} on line {lineno}")
        setattr(thresholds, key, float(value))
    return thresholds
