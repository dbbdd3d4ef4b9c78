"""Riccati flow on the complex projective line and the complex-lam obstruction.

The substitution ``psi = w exp(c lam z / (c**2-1))`` removes the first-order
term, leaving ``psi'' = Q(z) psi`` with

    Q(z) = (cos v - lam**2)/(c**2-1) + c**2 lam**2/(c**2-1)**2.

On the chart ``eta = psi'/psi`` the flow is ``eta' = Q - eta**2`` and on
``zeta = psi/psi' = 1/eta`` it is ``zeta' = 1 - Q zeta**2``.  Only ``cos v`` depends on ``z``
and it is real, so on the real ``eta`` axis the imaginary part of the field
is the constant ``2 p q / (c**2-1)**2``.  For ``p q > 0`` the closed upper
half-plane is forward invariant while ``eta_s`` lies below it; no orbit can
join ``eta_u`` to ``eta_s``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .asymptotics import SpectralParameter, as_spectral
from .errors import ChartThrash, DegenerateLambda, IntegratorFailure
from .lagrangian_flow import HALF_PI, IntegrationControls, tau_to_z
from .profile import KinkProfile, WaveParameters

MAX_CHART_SWITCHES = 100
WITNESS_TOL = 1e-8


class Chart(str, enum.Enum):
    ETA = "eta"
    ZETA = "zeta"


@dataclass(frozen=True)
class RiccatiState:
    chart: Chart
    value: complex
    z: float

    def switched(self) -> "RiccatiState":
        other = Chart.ZETA if self.chart is Chart.ETA else Chart.ETA
        return RiccatiState(other, 1.0 / self.value, self.z)

    @property
    def eta(self) -> complex:
        return self.value if self.chart is Chart.ETA else 1.0 / self.value


@dataclass(frozen=True)
class RiccatiFixedPoints:
    eta_u: complex
    eta_s: complex


@dataclass(frozen=True)
class ObstructionSigns:
    eta_sign: int
    zeta_sign: int
    eta_rate: float  # Im of the eta field on the real axis, 2pq/(c^2-1)^2


@dataclass(frozen=True)
class FixedPointAngles:
    """``theta_u`` is the angle ``atan2(r**2 sin 2theta, r**2 cos 2theta + 1 - c**2)``,
    i.e. ``arg(lam**2 + 1 - c**2) = arg(eta_u**2)``; ``arg_eta_u`` is half of it."""

    theta_u: float
    arg_eta_u: float
    arg_eta_s: float


def _subluminal(params) -> WaveParameters:
    params = params.params if isinstance(params, KinkProfile) else params
    if not params.subluminal:
        raise ValueError("the Riccati analysis applies to subluminal speeds")
    return params


def liouville_shift(params, lam, slope: complex) -> complex:
    """Map a slope ``w2/w1`` to ``eta = w2/w1 + c lam/(c**2-1)``."""
    params = _subluminal(params)
    return slope + params.c * as_spectral(lam).value / params.m


def fixed_points(params, lam) -> RiccatiFixedPoints:
    """``eta_u = -sqrt(lam**2 - (c**2-1))/(c**2-1)`` and ``eta_s = -eta_u``."""
    params = _subluminal(params)
    lv = as_spectral(lam).value
    eta_u = -cmath.sqrt(lv * lv - params.m) / params.m
    return RiccatiFixedPoints(eta_u, -eta_u)


def _q_terms(params: WaveParameters, lv: complex) -> tuple[complex, float]:
    """``Q(z) = q_inf + defect(z)/m`` with ``defect = 1 + cos v``."""
    m = params.m
    q_inf = (-1.0 - lv * lv) / m + params.c**2 * lv * lv / (m * m)
    return q_inf, 1.0 / m


def riccati_potential(profile: KinkProfile, lam, z) -> complex:
    q_inf, scale = _q_terms(profile.params, as_spectral(lam).value)
    return q_inf + scale * profile.defect(z)


def riccati_field_eta(profile: KinkProfile, lam, z: float, eta: complex) -> complex:
    """``(cos v - lam**2)/(c**2-1) + c**2 lam**2/(c**2-1)**2 - eta**2``."""
    params = _subluminal(profile)
    lv = as_spectral(lam).value
    m = params.m
    cos_v = float(profile.cos_v(z))
    return (cos_v - lv * lv) / m + params.c**2 * lv * lv / (m * m) - eta * eta


def riccati_field_zeta(profile: KinkProfile, lam, z: float, zeta: complex) -> complex:
    """``1 - Q(z) zeta**2`` on the chart ``zeta = 1/eta``."""
    return 1.0 - complex(riccati_potential(profile, lam, z)) * zeta * zeta


def real_axis_obstruction(params, lam) -> ObstructionSigns:
    """Direction of the flow across the real axis of each chart.

    On the eta chart ``Im eta' = 2pq/(c**2-1)**2`` at every real ``eta``;
    on the zeta chart ``Im zeta' = -2pq sigma**2/(c**2-1)**2`` at real
    ``zeta = sigma != 0``.

    Raises
    ------
    DegenerateLambda
        If ``p q = 0``, where the obstruction vanishes.
    """
    params = _subluminal(params)
    lam = as_spectral(lam)
    pq = lam.p * lam.q
    if pq == 0.0:
        raise DegenerateLambda(f"lam={lam.value!r} has p*q = 0; the real-axis obstruction gives no conclusion")
    rate = 2.0 * pq / params.m**2
    sign = 1 if rate > 0 else -1
    return ObstructionSigns(eta_sign=sign, zeta_sign=-sign, eta_rate=rate)


def fixed_point_angles(params, lam) -> FixedPointAngles:
    params = _subluminal(params)
    lam = as_spectral(lam)
    r2 = lam.r**2
    two_theta = 2.0 * lam.theta
    theta_u = math.atan2(r2 * math.sin(two_theta), r2 * math.cos(two_theta) + params.mu)
    fp = fixed_points(params, lam)
    return FixedPointAngles(theta_u, cmath.phase(fp.eta_u), cmath.phase(fp.eta_s))


@dataclass
class RiccatiTrajectory:
    """Piecewise trajectory; ``charts[i]`` tells how to read ``values[i]``."""

    tau: np.ndarray
    values: np.ndarray
    charts: list
    switches: int = 0
    nfev: int = 0

    @property
    def z(self) -> np.ndarray:
        return tau_to_z(self.tau)

    @property
    def eta(self) -> np.ndarray:
        on_eta = np.array([ch is Chart.ETA for ch in self.charts])
        return np.where(on_eta, self.values, 1.0 / self.values)

    @property
    def on_eta_chart(self) -> np.ndarray:
        return np.array([ch is Chart.ETA for ch in self.charts])

    @property
    def states(self) -> list[RiccatiState]:
        return [RiccatiState(ch, complex(v), float(z)) for ch, v, z in zip(self.charts, self.values, self.z)]

    @property
    def terminal(self) -> RiccatiState:
        return RiccatiState(self.charts[-1], complex(self.values[-1]), float(self.z[-1]))


def integrate_riccati(
    profile: KinkProfile,
    lam,
    start: RiccatiState | complex,
    tau_span: tuple[float, float],
    controls: IntegrationControls = IntegrationControls(),
    *,
    switch_radius: float = 2.0,
    max_switches: int = MAX_CHART_SWITCHES,
) -> RiccatiTrajectory:
    """Integrate the Riccati flow in ``tau``, switching charts when ``|value| > switch_radius``.

    Starting from ``|value| <= switch_radius`` a switch lands at
    ``1/switch_radius``, so the band ``[1/switch_radius, switch_radius]``
    acts as hysteresis.
    """
    q_inf, scale = _q_terms(_subluminal(profile), as_spectral(lam).value)
    k, z0 = profile.params.k, profile.center

    def potential(z):
        e = math.exp(-abs(k * (z - z0)))
        sech = 2.0 * e / (1.0 + e * e)
        return q_inf + scale * 2.0 * sech * sech

    def rhs_eta(tau, y):
        ct = math.cos(HALF_PI * tau)
        val = complex(y[0], y[1])
        d = (potential(math.tan(HALF_PI * tau)) - val * val) * (HALF_PI / (ct * ct))
        return [d.real, d.imag]

    def rhs_zeta(tau, y):
        ct = math.cos(HALF_PI * tau)
        val = complex(y[0], y[1])
        d = (1.0 - potential(math.tan(HALF_PI * tau)) * val * val) * (HALF_PI / (ct * ct))
        return [d.real, d.imag]

    def leave(tau, y):
        return math.hypot(y[0], y[1]) - switch_radius

    leave.terminal = True
    leave.direction = 1

    t0, t_end = map(float, tau_span)
    if isinstance(start, RiccatiState):
        state, chart = complex(start.value), start.chart
    else:
        state, chart = complex(start), Chart.ETA
    if abs(state) > switch_radius:
        state, chart = 1.0 / state, Chart.ZETA if chart is Chart.ETA else Chart.ETA

    taus, values, charts = [np.array([t0])], [np.array([state])], [chart]
    switches = nfev = 0
    tau = t0
    while True:
        sol = solve_ivp(
            rhs_eta if chart is Chart.ETA else rhs_zeta,
            (tau, t_end),
            [state.real, state.imag],
            method=controls.method,
            rtol=controls.tol,
            atol=controls.tol,
            max_step=controls.max_step,
            events=leave,
        )
        nfev += int(sol.nfev)
        if sol.status < 0:
            raise IntegratorFailure(f"Riccati integration failed at tau={sol.t[-1]!r}: {sol.message}")
        seg = sol.y[0, 1:] + 1j * sol.y[1, 1:]
        taus.append(sol.t[1:])
        values.append(seg)
        charts.extend([chart] * len(seg))
        tau = float(sol.t[-1])
        state = complex(sol.y[0, -1], sol.y[1, -1])
        if sol.status == 0:
            break
        switches += 1
        if switches > max_switches:
            raise ChartThrash(f"more than {max_switches} chart switches; adjust switch_radius or tolerances")
        state = 1.0 / state
        chart = Chart.ZETA if chart is Chart.ETA else Chart.ETA
        taus.append(np.array([tau]))
        values.append(np.array([state]))
        charts.append(chart)
    return RiccatiTrajectory(np.concatenate(taus), np.concatenate(values), charts, switches, nfev)


def chordal_distance(a: complex, b: complex) -> float:
    """Distance on the Riemann sphere between two points of the eta chart."""
    return 2.0 * abs(a - b) / math.sqrt((1.0 + abs(a) ** 2) * (1.0 + abs(b) ** 2))


@dataclass
class WitnessReport:
    lam: complex
    eta_u: complex
    eta_s: complex
    obstruction: ObstructionSigns
    min_im_eta: float
    max_im_eta: float
    half_plane_margin: float
    terminal_eta: complex
    terminal_distance_u: float
    terminal_distance_s: float
    chart_switches: int
    verdict: str
    trajectory: RiccatiTrajectory = field(repr=False, default=None)

    def to_dict(self) -> dict:
        return {
            "min_im_eta": self.min_im_eta,
            "max_im_eta": self.max_im_eta,
            "half_plane_margin": self.half_plane_margin,
            "chart_switches": self.chart_switches,
            "terminal_distance_to_eta_u": self.terminal_distance_u,
            "terminal_distance_to_eta_s": self.terminal_distance_s,
            "verdict": self.verdict,
        }


def heteroclinic_witness(
    profile: KinkProfile,
    lam,
    controls: IntegrationControls = IntegrationControls(),
    *,
    offset: complex = 0.0,
    switch_radius: float = 2.0,
    keep_trajectory: bool = True,
) -> WitnessReport:
    """Follow the Riccati orbit leaving ``eta_u`` at ``z = -inf`` across the line.

    ``eta_u`` attracts the limit flow in forward ``z``, so the orbit is seeded
    at ``eta_u + offset`` at ``tau = -1 + epsilon``.  The obstruction says the
    orbit stays in the half-plane ``sign(pq) Im eta >= 0`` (closed up through
    ``eta = inf``) while ``eta_s`` lies strictly outside it.  The verdict is
    ``"no eigenvalue"`` when the integrated orbit respects that half-plane at
    every sample to within ``1e-8`` and ends away from ``eta_s``.
    """
    spectral = as_spectral(lam)
    obstruction = real_axis_obstruction(profile.params, spectral)
    fp = fixed_points(profile.params, spectral)
    traj = integrate_riccati(
        profile, spectral, fp.eta_u + offset, controls.tau_span, controls, switch_radius=switch_radius
    )
    # zeta-chart samples are read through eta = 1/zeta, so the check covers
    # the whole orbit even when it never visits the eta chart
    im_eta = traj.eta.imag
    min_im = float(im_eta.min())
    max_im = float(im_eta.max())
    margin = min_im if obstruction.eta_sign > 0 else -max_im
    end = traj.terminal.eta
    d_u = chordal_distance(end, fp.eta_u)
    d_s = chordal_distance(end, fp.eta_s)
    if margin >= -WITNESS_TOL and d_s > d_u:
        verdict = "no eigenvalue"
    elif d_s < d_u:
        verdict = "eigenvalue candidate"
    else:
        verdict = "inconclusive"
    return WitnessReport(
        lam=spectral.value,
        eta_u=fp.eta_u,
        eta_s=fp.eta_s,
        obstruction=obstruction,
        min_im_eta=min_im,
        max_im_eta=max_im,
        half_plane_margin=margin,
        terminal_eta=end,
        terminal_distance_u=d_u,
        terminal_distance_s=d_s,
        chart_switches=traj.switches,
        verdict=verdict,
        trajectory=traj if keep_trajectory else None,
    )


def spectral_parameter_grid(re_max: float, im_max: float, steps: int, re_steps: int | None = None) -> list[SpectralParameter]:
    """Open-first-quadrant grid ``(0, re_max] x (0, im_max]``, row-major in Re."""
    re_steps = re_steps or steps
    res = np.linspace(re_max / re_steps, re_max, re_steps)
    ims = np.linspace(im_max / steps, im_max, steps)
    return [SpectralParameter(complex(a, b)) for a in res for b in ims]
