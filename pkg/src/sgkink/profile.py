"""Travelling-wave reduction and the closed-form subluminal kink.

A travelling wave ``u(x, t) = v(x + c t)`` of ``u_tt = u_xx + sin u`` solves
the pendulum equation ``(c**2 - 1) v'' = sin v``.  For ``c**2 < 1`` the
heteroclinic orbit joining ``(-pi, 0)`` to ``(pi, 0)`` is

    v(z) = 2 * arcsin(tanh(k * (z - z0))),    k = 1 / sqrt(1 - c**2).

Everything downstream evaluates the profile through this closed form, so no
ODE-solver error enters the spectral computations.  Derived quantities are
written in terms of ``sech`` and ``tanh`` of ``k (z - z0)`` to avoid the
cancellation in ``cos v + 1`` near the end states.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateProfilePoint, DegenerateSpeed

#: ``|c - 1|`` below this is rejected by :func:`classify_wave`.
SPEED_DEGENERACY_THRESHOLD = 1e-6


class Regime(str, enum.Enum):
    SUBLUMINAL = "Subluminal"
    SUPERLUMINAL = "Superluminal"


class Orientation(str, enum.Enum):
    UP = "Up"  # -pi -> pi
    DOWN = "Down"  # pi -> -pi


@dataclass(frozen=True)
class WaveParameters:
    """Wave speed with its regime and scaling constants.

    ``mu`` is ``|c**2 - 1|`` and ``k = 1/sqrt(mu)``.  ``m`` is the signed
    quantity ``c**2 - 1`` that appears in every coefficient of the
    linearisation.
    """

    c: float
    regime: Regime
    mu: float
    k: float

    @property
    def m(self) -> float:
        return self.c * self.c - 1.0

    @property
    def subluminal(self) -> bool:
        return self.regime is Regime.SUBLUMINAL


def classify_wave(c: float) -> WaveParameters:
    """Classify a wave speed and derive ``mu`` and ``k``.

    Raises
    ------
    DegenerateSpeed
        If ``|c - 1| <= SPEED_DEGENERACY_THRESHOLD``.
    ValueError
        If ``c`` is negative or not finite.
    """
    c = float(c)
    if not math.isfinite(c) or c < 0.0:
        raise ValueError(f"wave speed must be a finite non-negative number, got {c!r}")
    if abs(c - 1.0) <= SPEED_DEGENERACY_THRESHOLD:
        raise DegenerateSpeed(
            f"wave speed c={c!r} is within {SPEED_DEGENERACY_THRESHOLD:g} of the luminal "
            "speed c=1; the stability result excludes c**2 = 1"
        )
    if c * c < 1.0:
        mu = 1.0 - c * c
        regime = Regime.SUBLUMINAL
    else:
        mu = c * c - 1.0
        regime = Regime.SUPERLUMINAL
    return WaveParameters(c=c, regime=regime, mu=mu, k=1.0 / math.sqrt(mu))


def _sech(x):
    e = np.exp(-np.abs(x))
    return 2.0 * e / (1.0 + e * e)


@dataclass(frozen=True)
class KinkProfile:
    """Subluminal kink ``v(z)`` centred at ``center``.

    Methods accept scalars or numpy arrays.
    """

    params: WaveParameters
    orientation: Orientation = Orientation.UP
    center: float = 0.0
    _sign: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.params.subluminal:
            raise ValueError("kink profiles exist only for subluminal speeds (c**2 < 1)")
        object.__setattr__(self, "orientation", Orientation(self.orientation))
        object.__setattr__(self, "_sign", 1.0 if self.orientation is Orientation.UP else -1.0)

    @classmethod
    def from_speed(cls, c: float, orientation=Orientation.UP, center: float = 0.0) -> "KinkProfile":
        return cls(classify_wave(c), orientation, float(center))

    @property
    def c(self) -> float:
        return self.params.c

    @property
    def k(self) -> float:
        return self.params.k

    def _kz(self, z):
        return self.params.k * (np.asarray(z, dtype=float) - self.center)

    def value(self, z):
        """``2 arcsin(tanh(k (z - z0)))``, evaluated as ``2 arctan(sinh(...))``.

        The two agree identically; the arcsin form loses half the digits
        near ``v = +-pi`` where ``tanh`` rounds to 1.
        """
        with np.errstate(over="ignore"):
            return self._sign * 2.0 * np.arctan(np.sinh(self._kz(z)))

    def slope(self, z):
        """``v_z = 2 k sech(k (z - z0))``, i.e. the phase-plane orbit speed."""
        return self._sign * 2.0 * self.params.k * _sech(self._kz(z))

    def second_derivative(self, z):
        kz = self._kz(z)
        return -self._sign * 2.0 * self.params.k**2 * np.tanh(kz) * _sech(kz)

    def defect(self, z):
        """``1 + cos v(z)``, computed as ``2 sech**2`` without cancellation."""
        return 2.0 * _sech(self._kz(z)) ** 2

    def cos_v(self, z):
        return self.defect(z) - 1.0


def kink_value(profile: KinkProfile, z):
    return profile.value(z)


def kink_slope(profile: KinkProfile, z):
    return profile.slope(z)


def orbit_slope(params: WaveParameters, v):
    """Slope ``d v_z / d v`` of the upper (``v_z > 0``) heteroclinic orbit at ``v``.

    Uses ``-sin v / sqrt((1 - c**2) (2 cos v + 2))`` with ``2 cos v + 2``
    evaluated as ``4 cos**2(v/2)``.  On the ``Up`` orbit this reduces to
    ``-sin(v/2)/sqrt(1 - c**2)``, which stays strictly inside
    ``(-1/sqrt(1-c**2), 1/sqrt(1-c**2))`` for ``v`` in ``(-pi, pi)``.
    """
    v = np.asarray(v, dtype=float)
    cos_half = np.cos(v / 2.0)
    if np.any(1.0 + np.cos(v) == 0.0) or np.any(np.abs(cos_half) < 1e-150):
        raise DegenerateProfilePoint("cos v + 1 underflows; the orbit slope is undefined at v = +-pi")
    return -np.sin(v) / (2.0 * math.sqrt(params.mu) * np.abs(cos_half))


def tangent_slope(profile: KinkProfile, z):
    """Slope of the tangent line to the heteroclinic orbit at ``v(z)``."""
    # Down kinks run along the lower branch v_z < 0, which flips the slope.
    return profile._sign * orbit_slope(profile.params, profile.value(z))


def pendulum_residual(profile: KinkProfile, z):
    """``(c**2 - 1) v_zz - sin v`` for the closed form; zero up to rounding."""
    return profile.params.m * profile.second_derivative(z) - np.sin(profile.value(z))


def sample_profile(profile: KinkProfile, z_min: float, z_max: float, samples: int):
    """Return ``(z, v, v_z)`` arrays on a uniform grid."""
    if samples < 2:
        raise ValueError("need at least 2 samples")
    if not z_max > z_min:
        raise ValueError("z_max must exceed z_min")
    z = np.linspace(z_min, z_max, samples)
    return z, profile.value(z), profile.slope(z)
