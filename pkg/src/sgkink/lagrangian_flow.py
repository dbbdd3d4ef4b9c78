"""Projectivised flow of the linearised system on the compactified line.

A real 2x2 system ``w' = A(z) w`` carries lines through the origin to lines.
Writing a line as ``(cos theta, sin theta)`` gives the scalar angle equation

    theta' = a21 cos^2 + (a22 - a11) sin cos - a12 sin^2,

which for a unit frame equals ``w1 w2' - w2 w1'``.  Integrating the angle
instead of the raw frame avoids the exponential norm growth of the frame.
The spatial variable is compactified by ``z = tan(pi tau / 2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .asymptotics import as_spectral, asymptotic_eigenpairs, limit_matrix
from .errors import BadAsymptotics, DegenerateSplitting, IntegratorFailure
from .profile import KinkProfile, WaveParameters

HALF_PI = 0.5 * math.pi

Coefficients = Callable[[float], tuple]


def tau_to_z(tau):
    return np.tan(HALF_PI * np.asarray(tau, dtype=float))


def z_to_tau(z):
    return np.arctan(np.asarray(z, dtype=float)) / HALF_PI


@dataclass(frozen=True)
class IntegrationControls:
    """Tunables for the compactified integrations.

    ``epsilon`` is the offset from ``tau = -1`` (and ``+1``) where the
    integration starts (ends).  ``tol`` is used as both the relative and the
    absolute local error tolerance.
    """

    epsilon: float = 1e-3
    tol: float = 1e-10
    max_step: float = 1e-2
    method: str = "LSODA"

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        if not self.max_step > 0.0:
            raise ValueError(f"max_step must be positive, got {self.max_step!r}")

    @property
    def tau_span(self) -> tuple[float, float]:
        return -1.0 + self.epsilon, 1.0 - self.epsilon


@dataclass(frozen=True)
class LagrangianFrame:
    """A nonzero frame ``(w1, w2)`` for a line in the plane."""

    w1: complex
    w2: complex

    def __post_init__(self):
        if self.w1 == 0 and self.w2 == 0:
            raise ValueError("a frame must be nonzero")

    @classmethod
    def from_angle(cls, theta: float) -> "LagrangianFrame":
        return cls(math.cos(theta), math.sin(theta))

    @classmethod
    def from_vector(cls, vec) -> "LagrangianFrame":
        return cls(vec[0], vec[1])

    @property
    def angle(self) -> float:
        """Projective angle in ``[0, pi)``."""
        theta = math.atan2(complex(self.w2).real, complex(self.w1).real)
        theta = math.fmod(theta, math.pi)
        if theta < 0.0:
            theta += math.pi
        # -tiny + pi rounds to pi
        return 0.0 if theta >= math.pi else theta

    @property
    def norm(self) -> float:
        return math.hypot(abs(self.w1), abs(self.w2))

    def det(self, other: "LagrangianFrame"):
        """``det[self, other]``; zero exactly when the two lines coincide."""
        return self.w1 * other.w2 - self.w2 * other.w1

    def as_array(self) -> np.ndarray:
        return np.array([self.w1, self.w2])


@dataclass(frozen=True)
class CompactifiedState:
    tau: float
    frame: LagrangianFrame

    @property
    def z(self) -> float:
        return float(tau_to_z(self.tau))


@dataclass
class TrajectoryRecord:
    """An integrated curve of lines ``theta(tau)``.

    ``theta`` is the lifted (continuous, not reduced mod pi) angle at the
    solver's accepted steps ``tau``.  ``coefficients`` maps ``z`` to
    ``(a11, a12, a21, a22)`` and is kept so crossing forms can be evaluated
    along the curve; ``defect`` optionally maps ``z`` to ``1 + cos v``.
    """

    lam: object
    tau: np.ndarray
    theta: np.ndarray
    coefficients: Coefficients = field(repr=False)
    dense: object = field(repr=False)
    n_steps: int = 0
    nfev: int = 0
    njev: int = 0
    defect: Optional[Callable[[float], float]] = field(default=None, repr=False)
    reference_angles: dict = field(default_factory=dict)

    @property
    def z(self) -> np.ndarray:
        return tau_to_z(self.tau)

    @property
    def samples(self) -> list[CompactifiedState]:
        return [CompactifiedState(float(t), LagrangianFrame.from_angle(float(th))) for t, th in zip(self.tau, self.theta)]

    def theta_at(self, tau):
        return self.dense(tau)[0]

    def frames(self) -> np.ndarray:
        """Unit frames ``(w1, w2)`` as an ``(n, 2)`` array."""
        return np.column_stack([np.cos(self.theta), np.sin(self.theta)])

    def frame_at(self, tau: float) -> LagrangianFrame:
        return LagrangianFrame.from_angle(float(self.theta_at(tau)))


def kink_coefficients(profile: KinkProfile, lam: float) -> Coefficients:
    """Entries of ``A(lam, z)`` for real ``lam`` as a fast scalar callable."""
    lam = float(lam)
    m = profile.params.m
    k = profile.params.k
    z0 = profile.center
    a22 = -2.0 * profile.params.c * lam / m
    base = (-1.0 - lam * lam) / m

    def coefficients(z: float):
        x = abs(k * (z - z0))
        e = math.exp(-x)
        sech = 2.0 * e / (1.0 + e * e)
        # cos v = 2 sech^2 - 1
        return 0.0, 1.0, base + 2.0 * sech * sech / m, a22

    return coefficients


def constant_coefficients(matrix) -> Coefficients:
    a = np.asarray(matrix, dtype=float)
    entries = (float(a[0, 0]), float(a[0, 1]), float(a[1, 0]), float(a[1, 1]))
    return lambda z: entries


def angle_field(coefficients: Coefficients, z: float, theta: float) -> float:
    a11, a12, a21, a22 = coefficients(z)
    co, si = math.cos(theta), math.sin(theta)
    return a21 * co * co + (a22 - a11) * si * co - a12 * si * si


def angle_velocity(profile: KinkProfile, lam: float, z: float, theta: float) -> float:
    """``d theta / dz`` of the projectivised linearised flow at ``(z, theta)``."""
    return angle_field(kink_coefficients(profile, lam), z, theta)


def integrate_angle_flow(
    coefficients: Coefficients,
    theta0: float,
    tau_span: tuple[float, float],
    controls: IntegrationControls = IntegrationControls(),
    lam=None,
    defect=None,
) -> TrajectoryRecord:
    """Integrate the angle equation in the compactified variable ``tau``."""
    t0, t1 = map(float, tau_span)
    if not (-1.0 < t0 < t1 < 1.0):
        raise ValueError(f"tau span must satisfy -1 < t0 < t1 < 1, got {tau_span!r}")

    def rhs(tau, y):
        ct = math.cos(HALF_PI * tau)
        z = math.tan(HALF_PI * tau)
        return [angle_field(coefficients, z, y[0]) * HALF_PI / (ct * ct)]

    sol = solve_ivp(
        rhs,
        (t0, t1),
        [float(theta0)],
        method=controls.method,
        rtol=controls.tol,
        atol=controls.tol,
        max_step=controls.max_step,
        dense_output=True,
    )
    if sol.status != 0 or not np.isclose(sol.t[-1], t1, rtol=0.0, atol=1e-14):
        raise IntegratorFailure(f"angle integration stopped at tau={sol.t[-1]!r}: {sol.message}")
    return TrajectoryRecord(
        lam=lam,
        tau=sol.t,
        theta=sol.y[0],
        coefficients=coefficients,
        dense=sol.sol,
        n_steps=len(sol.t) - 1,
        nfev=int(sol.nfev),
        njev=int(sol.njev),
        defect=defect,
    )


def _real_angle(vec) -> float:
    return LagrangianFrame(complex(vec[0]).real, complex(vec[1]).real).angle


def unstable_curve(
    profile: KinkProfile, lam: float, controls: IntegrationControls = IntegrationControls()
) -> TrajectoryRecord:
    """Curve of lines leaving the unstable eigenline ``xi_u`` at ``z = -inf``.

    The angle is seeded exactly at ``xi_u`` at ``tau = -1 + epsilon`` and
    integrated to ``tau = 1 - epsilon``.  The record carries the angles of
    ``xi_u`` and ``xi_s`` under ``reference_angles``.
    """
    spectral = as_spectral(lam)
    if not spectral.is_real:
        raise ValueError("unstable_curve needs a real spectral parameter; use the riccati module for complex lam")
    try:
        asym = asymptotic_eigenpairs(profile.params, spectral)
    except DegenerateSplitting as exc:
        raise BadAsymptotics(str(exc)) from exc
    theta_u = _real_angle(asym.xi_u)
    theta_s = _real_angle(asym.xi_s)
    coefficients = kink_coefficients(profile, spectral.p)
    record = integrate_angle_flow(
        coefficients,
        theta_u,
        controls.tau_span,
        controls,
        lam=spectral.p,
        defect=lambda z: float(profile.defect(z)),
    )
    record.reference_angles = {"xi_u": theta_u, "xi_s": theta_s}
    return record


def limit_fixed_points(params: WaveParameters, lam: float, n_scan: int = 3600) -> list[float]:
    """All fixed points in ``[0, pi)`` of the angle flow of ``A(lam)``.

    Found by a sign-change scan of the limit angle field followed by
    bracketed root refinement.
    """
    a = limit_matrix(params, as_spectral(lam)).real
    coefficients = constant_coefficients(a)
    grid = np.linspace(0.0, math.pi, n_scan + 1)
    values = np.array([angle_field(coefficients, 0.0, t) for t in grid])
    roots = []
    for i in range(n_scan):
        f0, f1 = values[i], values[i + 1]
        if f0 == 0.0:
            roots.append(float(grid[i]))
        elif f0 * f1 < 0.0:
            roots.append(brentq(lambda t: angle_field(coefficients, 0.0, t), grid[i], grid[i + 1], xtol=1e-15))
    return roots


def angular_distance(theta_a, theta_b):
    """Distance between lines at angles ``theta_a`` and ``theta_b`` on RP^1."""
    d = np.mod(np.asarray(theta_a) - np.asarray(theta_b), math.pi)
    return np.minimum(d, math.pi - d)
