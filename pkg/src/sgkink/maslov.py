"""Crossings of the unstable curve with the stable eigenline, and their count.

For real ``lam`` the curve of lines ``l(z)`` leaving ``xi_u`` at ``z = -inf`` is
compared with the fixed line ``xi_s``.  Each passage through ``xi_s`` is a
crossing; its sign is the sign of the crossing form ``w1 w2' - w2 w1'``.  On
``xi_s`` the form reduces to ``(cos v + 1) w1**2 / (c**2 - 1)``, which is
negative for subluminal kinks, so the index is minus the crossing count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import IrregularCrossing
from .lagrangian_flow import (
    IntegrationControls,
    LagrangianFrame,
    TrajectoryRecord,
    angle_field,
    tau_to_z,
    unstable_curve,
)
from .parallel import ordered_map
from .profile import KinkProfile

GUARD_TAU = 1e-2
FAR_FIELD_TOL = 1e-3
REGULARITY_TOL = 1e-8
REFINE_XTOL = 1e-12


@dataclass(frozen=True)
class CrossingEvent:
    z_cross: float
    tau_cross: float
    gamma_value: float
    gamma_sign: int
    frame_at_crossing: LagrangianFrame
    endpoint: bool = False


@dataclass
class MaslovResult:
    lam: float
    crossings: list[CrossingEvent]
    endpoint_crossings: list[CrossingEvent] = field(default_factory=list)

    @property
    def index(self) -> int:
        return sum(ev.gamma_sign for ev in self.crossings)

    @property
    def count(self) -> int:
        return len(self.crossings)

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "count": self.count,
            "index": self.index,
            "crossings": [{"z": ev.z_cross, "gamma": ev.gamma_value} for ev in self.crossings],
            "endpoint_crossings": len(self.endpoint_crossings),
        }


def crossing_form(profile: KinkProfile, lam, z: float, frame: LagrangianFrame):
    """``((cos v - lam**2) w1**2 - 2 c lam w1 w2) / (c**2 - 1) - w2**2``."""
    m = profile.params.m
    c = profile.params.c
    cos_v = float(profile.cos_v(z))
    w1, w2 = frame.w1, frame.w2
    return (cos_v - lam * lam) / m * w1 * w1 - 2.0 * c * lam / m * w1 * w2 - w2 * w2


def stable_line_crossing_form(profile: KinkProfile, z: float, frame: LagrangianFrame):
    """Crossing form of a frame lying on ``xi_s``: ``(cos v + 1) w1**2 / (c**2 - 1)``."""
    return float(profile.defect(z)) * frame.w1 * frame.w1 / profile.params.m


def _in_guard_band(trajectory: TrajectoryRecord, tau: float, z: float, guard_tau: float, far_field_tol: float) -> bool:
    if abs(tau) > 1.0 - guard_tau:
        return True
    # Far field: the profile sits within far_field_tol of its end state, the
    # flow is numerically the constant-coefficient one and xi_s repels, so a
    # passage through xi_s there cannot be resolved by forward integration.
    return trajectory.defect is not None and 0.5 * trajectory.defect(z) < far_field_tol


def detect_crossings(
    trajectory: TrajectoryRecord,
    xi_s: LagrangianFrame,
    *,
    guard_tau: float = GUARD_TAU,
    far_field_tol: float = FAR_FIELD_TOL,
    regularity_tol: float = REGULARITY_TOL,
) -> list[CrossingEvent]:
    """Locate every passage of ``trajectory`` through the line ``xi_s``.

    Passages are read off the lifted angle: the curve meets ``xi_s`` whenever
    ``(theta - theta_s)/pi`` passes an integer.  Each passage is refined to
    ``1e-12`` in ``tau`` and its crossing form evaluated on the unit frame.
    A passage exactly at a sample belongs to the interval ending there.

    Events inside the boundary guard (``|tau| > 1 - guard_tau``, or the far
    field where ``(1 + cos v)/2 < far_field_tol``) come back with
    ``endpoint=True``.

    Raises
    ------
    IrregularCrossing
        If an interior crossing has ``|Gamma| < regularity_tol``.
    """
    theta_s = xi_s.angle
    x = (trajectory.theta - theta_s) / math.pi
    events = []
    for i in range(len(x) - 1):
        x0, x1 = x[i], x[i + 1]
        if x1 < x0:
            js = range(math.ceil(x1), math.ceil(x0))
        elif x1 > x0:
            js = range(math.floor(x0) + 1, math.floor(x1) + 1)
        else:
            continue
        t0, t1 = trajectory.tau[i], trajectory.tau[i + 1]
        for j in js:
            target = theta_s + j * math.pi

            def offset(t, target=target):
                return float(trajectory.theta_at(t)) - target

            f0, f1 = offset(t0), offset(t1)
            if f1 == 0.0:
                tau_c = float(t1)
            elif f0 * f1 < 0.0:
                tau_c = brentq(offset, t0, t1, xtol=REFINE_XTOL, rtol=4 * np.finfo(float).eps)
            else:
                # dense interpolant disagrees with the step values; fall back to the nearer end
                tau_c = float(t0 if abs(f0) < abs(f1) else t1)
            theta_c = float(trajectory.theta_at(tau_c))
            z_c = float(tau_to_z(tau_c))
            gamma = angle_field(trajectory.coefficients, z_c, theta_c)
            endpoint = _in_guard_band(trajectory, tau_c, z_c, guard_tau, far_field_tol)
            if not endpoint and abs(gamma) < regularity_tol:
                raise IrregularCrossing(
                    f"crossing at z={z_c!r} has crossing form {gamma!r} below {regularity_tol:g}"
                )
            events.append(
                CrossingEvent(
                    z_cross=z_c,
                    tau_cross=tau_c,
                    gamma_value=gamma,
                    gamma_sign=1 if gamma > 0 else -1,
                    frame_at_crossing=LagrangianFrame.from_angle(theta_c),
                    endpoint=endpoint,
                )
            )
    events.sort(key=lambda ev: ev.tau_cross)
    return events


def maslov_index(
    profile: KinkProfile,
    lam: float,
    controls: IntegrationControls = IntegrationControls(),
    *,
    guard_tau: float = GUARD_TAU,
    far_field_tol: float = FAR_FIELD_TOL,
) -> MaslovResult:
    """Signed count of crossings of the unstable curve with ``xi_s`` at real ``lam``."""
    trajectory = unstable_curve(profile, lam, controls)
    xi_s = LagrangianFrame.from_angle(trajectory.reference_angles["xi_s"])
    events = detect_crossings(trajectory, xi_s, guard_tau=guard_tau, far_field_tol=far_field_tol)
    return MaslovResult(
        lam=float(lam),
        crossings=[ev for ev in events if not ev.endpoint],
        endpoint_crossings=[ev for ev in events if ev.endpoint],
    )


@dataclass
class EigenvalueSweep:
    """Maslov data along a real ``lam`` grid."""

    lam_grid: np.ndarray
    results: list[MaslovResult]

    @property
    def counts(self) -> list[int]:
        return [r.count for r in self.results]

    @property
    def eigenvalue_count(self) -> int:
        """``|N(lam1) - N(lam2)|`` for the grid end points."""
        return abs(self.results[0].count - self.results[-1].count)

    @property
    def grid_jumps(self) -> list[tuple[float, float]]:
        """Adjacent grid pairs whose crossing counts differ by two or more."""
        return [
            (a.lam, b.lam)
            for a, b in zip(self.results, self.results[1:])
            if abs(a.count - b.count) >= 2
        ]

    @property
    def grid_crossing_jump(self) -> bool:
        return bool(self.grid_jumps)

    def endpoint_lambdas(self) -> list[float]:
        return [r.lam for r in self.results if r.endpoint_crossings]


def _maslov_job(args):
    profile, lam, controls, guard_tau, far_field_tol = args
    return maslov_index(profile, lam, controls, guard_tau=guard_tau, far_field_tol=far_field_tol)


def maslov_sweep(
    profile: KinkProfile,
    lam_grid,
    controls: IntegrationControls = IntegrationControls(),
    *,
    jobs: int = 1,
    guard_tau: float = GUARD_TAU,
    far_field_tol: float = FAR_FIELD_TOL,
) -> EigenvalueSweep:
    lam_grid = np.asarray(lam_grid, dtype=float)
    tasks = [(profile, float(lam), controls, guard_tau, far_field_tol) for lam in lam_grid]
    return EigenvalueSweep(lam_grid, ordered_map(_maslov_job, tasks, jobs))


def eigenvalue_count(
    profile: KinkProfile,
    lam1: float,
    lam2: float,
    grid_n: int,
    controls: IntegrationControls = IntegrationControls(),
    *,
    jobs: int = 1,
) -> EigenvalueSweep:
    """Count real eigenvalues in ``(lam1, lam2)`` from crossing counts at the ends.

    The full sweep over ``grid_n`` points is returned so the counts can be
    inspected for monotonicity and for grid jumps.
    """
    if not lam1 < lam2:
        raise ValueError("need lam1 < lam2")
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    return maslov_sweep(profile, np.linspace(lam1, lam2, grid_n), controls, jobs=jobs)
