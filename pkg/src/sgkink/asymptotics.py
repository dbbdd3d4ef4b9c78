"""Coefficient matrices of the linearised problem and their asymptotics.

The eigenvalue problem ``(c**2-1) phi'' + 2 c lam phi' + (lam**2 - cos v) phi = 0``
is written as ``w' = A(lam, z) w`` with ``w = (phi, phi')``.  This module gives
``A``, its limit at ``z -> +-inf``, the asymptotic eigenpairs for subluminal
speeds and the characteristic exponents for superluminal speeds.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateSplitting
from .profile import KinkProfile, Regime, WaveParameters, classify_wave

SPLITTING_THRESHOLD = 1e-8
EXPONENT_DEGENERACY = 1e-12


@dataclass(frozen=True)
class SpectralParameter:
    """A complex spectral parameter with cached Cartesian and polar parts."""

    value: complex
    p: float = field(init=False)
    q: float = field(init=False)
    r: float = field(init=False)
    theta: float = field(init=False)

    def __post_init__(self):
        val = complex(self.value)
        object.__setattr__(self, "value", val)
        object.__setattr__(self, "p", val.real)
        object.__setattr__(self, "q", val.imag)
        object.__setattr__(self, "r", abs(val))
        object.__setattr__(self, "theta", cmath.phase(val))

    @property
    def is_real(self) -> bool:
        return self.q == 0.0

    def conjugate(self) -> "SpectralParameter":
        return SpectralParameter(self.value.conjugate())

    def __complex__(self):
        return self.value


def as_spectral(lam) -> SpectralParameter:
    if isinstance(lam, SpectralParameter):
        return lam
    return SpectralParameter(complex(lam))


def _params(params_or_c) -> WaveParameters:
    if isinstance(params_or_c, WaveParameters):
        return params_or_c
    if isinstance(params_or_c, KinkProfile):
        return params_or_c.params
    return classify_wave(params_or_c)


def _require_subluminal(params: WaveParameters):
    if not params.subluminal:
        raise ValueError(f"operation requires a subluminal speed, got c={params.c!r}")


def _require_superluminal(params: WaveParameters):
    if params.regime is not Regime.SUPERLUMINAL:
        raise ValueError(f"operation requires a superluminal speed, got c={params.c!r}")


def _scalar(lam: SpectralParameter):
    return lam.p if lam.is_real else lam.value


@dataclass(frozen=True)
class AsymptoticData:
    """Eigenvalues and unit eigenvectors of the limit matrix ``A(lam)``."""

    gamma_u: complex
    gamma_s: complex
    xi_u: np.ndarray
    xi_s: np.ndarray
    regime: Regime


@dataclass(frozen=True)
class CharacteristicExponents:
    """Roots of ``(1-c**2) r**2 - 2 c lam r - (lam**2 + 1) = 0``; ``r1`` takes the ``+`` root."""

    r1: complex
    r2: complex


def coefficient_matrix(profile: KinkProfile, lam, z: float) -> np.ndarray:
    """``A(lam, z) = [[0, 1], [(cos v - lam**2)/(c**2-1), -2 c lam/(c**2-1)]]``."""
    lam = as_spectral(lam).value
    m = profile.params.m
    cos_v = float(profile.cos_v(z))
    return np.array(
        [[0.0, 1.0], [(cos_v - lam * lam) / m, -2.0 * profile.params.c * lam / m]],
        dtype=complex,
    )


def limit_matrix(params, lam) -> np.ndarray:
    """Limit of :func:`coefficient_matrix` as ``z -> +-inf`` (``cos v -> -1``)."""
    params = _params(params)
    _require_subluminal(params)
    lam = as_spectral(lam).value
    m = params.m
    return np.array([[0.0, 1.0], [(-1.0 - lam * lam) / m, -2.0 * params.c * lam / m]], dtype=complex)


def normalize_frame(vec) -> np.ndarray:
    """Scale to unit Euclidean length with the first nonzero entry real positive."""
    vec = np.asarray(vec, dtype=complex)
    norm = np.linalg.norm(vec)
    if norm == 0.0:
        raise ValueError("cannot normalise the zero vector")
    vec = vec / norm
    lead = vec[0] if abs(vec[0]) > 1e-300 else vec[1]
    return vec * (abs(lead) / lead)


def asymptotic_eigenpairs(params, lam) -> AsymptoticData:
    """Unstable/stable eigenvalues and eigenlines of ``A(lam)`` for ``c**2 < 1``.

    ``gamma_u = (-c lam - s)/(c**2-1)`` and ``gamma_s = (-c lam + s)/(c**2-1)``
    with ``s`` the principal root of ``lam**2 - (c**2-1)``.  Eigenlines use
    ``((-c lam +- s)/(lam**2+1), 1)`` and fall back to ``(1, gamma)`` when
    ``lam**2 + 1`` is tiny.

    Raises
    ------
    DegenerateSplitting
        If ``|gamma_u - gamma_s| < 1e-8`` or the radicand lies on the negative
        real axis (branch cut), where unstable/stable labels are undefined.
    """
    params = _params(params)
    _require_subluminal(params)
    lam = as_spectral(lam)
    lv = lam.value
    c, m = params.c, params.m
    radicand = lv * lv - m
    if radicand.imag == 0.0 and radicand.real < 0.0:
        raise DegenerateSplitting(
            f"lam={lv!r} puts lam**2 - (c**2-1) on the branch cut; no stable/unstable splitting"
        )
    s = cmath.sqrt(radicand)
    gamma_u = (-c * lv - s) / m
    gamma_s = (-c * lv + s) / m
    if abs(gamma_u - gamma_s) < SPLITTING_THRESHOLD:
        raise DegenerateSplitting(f"asymptotic eigenvalues coincide at lam={lv!r}, c={c!r}")
    denom = lv * lv + 1.0
    if abs(denom) > 1e-8:
        xi_u = np.array([(-c * lv + s) / denom, 1.0])
        xi_s = np.array([(-c * lv - s) / denom, 1.0])
    else:
        xi_u = np.array([1.0, gamma_u])
        xi_s = np.array([1.0, gamma_s])
    if lam.is_real:
        gamma_u, gamma_s = complex(gamma_u.real, 0.0), complex(gamma_s.real, 0.0)
    return AsymptoticData(gamma_u, gamma_s, normalize_frame(xi_u), normalize_frame(xi_s), params.regime)


def large_lambda_matrix(params, lam: float):
    """Constant-coefficient matrix for ``lam >> 1`` and its eigenvalues.

    Returns ``(matrix, (-lam/(c+1), -lam/(c-1)))``.
    """
    params = _params(params)
    _require_subluminal(params)
    lam = float(lam)
    c, m = params.c, params.m
    matrix = np.array([[0.0, 1.0], [-lam * lam / m, -2.0 * c * lam / m]])
    return matrix, (-lam / (c + 1.0), -lam / (c - 1.0))


def superluminal_exponents(params, lam) -> CharacteristicExponents:
    """``r_{1,2} = (c lam +- sqrt(lam**2 + 1 - c**2)) / (1 - c**2)`` for ``c**2 > 1``."""
    params = _params(params)
    _require_superluminal(params)
    lv = as_spectral(lam).value
    c = params.c
    one_minus = 1.0 - c * c
    radicand = lv * lv + one_minus
    if abs(radicand) < EXPONENT_DEGENERACY:
        raise DegenerateSplitting(f"characteristic exponents coincide at lam={lv!r}, c={c!r}")
    s = cmath.sqrt(radicand)
    return CharacteristicExponents((c * lv + s) / one_minus, (c * lv - s) / one_minus)


def luminal_limit_exponents(lam) -> tuple[float, complex]:
    """Behaviour of ``r_{1,2}`` as ``c -> 1+``.

    ``r1`` diverges like ``2 lam / (1 - c**2)``; the first entry is the sign
    of its real part in that limit.  ``r2`` converges to ``-(lam + 1/lam)/2``.
    Valid for ``Re lam > 0`` (principal root of ``lam**2`` is ``lam``).
    """
    lv = as_spectral(lam).value
    return -math.copysign(1.0, lv.real), -(lv + 1.0 / lv) / 2.0


@dataclass(frozen=True)
class ExponentSample:
    c: float
    lam: complex
    r1: complex | None
    r2: complex | None
    sign_r1: int
    sign_r2: int
    signs_agree: bool
    dre_r1_dc: float
    dre_r2_dc: float
    derivative_signs_match: bool
    degenerate: bool = False


@dataclass
class ExponentScan:
    samples: list[ExponentSample]

    @property
    def valid(self) -> list[ExponentSample]:
        return [s for s in self.samples if not s.degenerate]

    @property
    def all_signs_agree(self) -> bool:
        return all(s.signs_agree for s in self.valid)

    @property
    def agreement_fraction(self) -> float:
        valid = self.valid
        return sum(s.signs_agree for s in valid) / len(valid) if valid else float("nan")

    @property
    def derivative_mismatches(self) -> list[ExponentSample]:
        return [s for s in self.valid if not s.derivative_signs_match]

    @property
    def degenerate_points(self) -> list[tuple[float, complex]]:
        return [(s.c, s.lam) for s in self.samples if s.degenerate]


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def exponent_sign_scan(
    c_grid: Iterable[float], lam_grid: Sequence, dc: float = 1e-6
) -> ExponentScan:
    """Sign structure of ``Re r_{1,2}`` over a grid of superluminal speeds.

    For each ``(c, lam)`` records the signs of ``Re r1`` and ``Re r2`` and the
    centred-difference derivative ``d Re r / d c`` with step ``dc``.
    Degenerate pairs are flagged and skipped rather than raised.
    """
    samples = []
    for c in c_grid:
        params = classify_wave(c)
        _require_superluminal(params)
        for lam in lam_grid:
            lv = as_spectral(lam).value
            try:
                r = superluminal_exponents(params, lv)
                hi = superluminal_exponents(classify_wave(c + dc), lv)
                lo = superluminal_exponents(classify_wave(c - dc), lv)
            except DegenerateSplitting:
                samples.append(
                    ExponentSample(float(c), lv, None, None, 0, 0, False, math.nan, math.nan, False, True)
                )
                continue
            s1, s2 = _sign(r.r1.real), _sign(r.r2.real)
            d1 = (hi.r1.real - lo.r1.real) / (2 * dc)
            d2 = (hi.r2.real - lo.r2.real) / (2 * dc)
            target = _sign(lv.real)
            samples.append(
                ExponentSample(
                    c=float(c),
                    lam=lv,
                    r1=r.r1,
                    r2=r.r2,
                    sign_r1=s1,
                    sign_r2=s2,
                    signs_agree=s1 == s2 and s1 != 0,
                    dre_r1_dc=d1,
                    dre_r2_dc=d2,
                    derivative_signs_match=_sign(d1) == target and _sign(d2) == target,
                )
            )
    return ExponentScan(samples)
