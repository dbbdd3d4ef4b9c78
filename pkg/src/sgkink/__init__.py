"""Spectral-stability toolkit for travelling kink waves of the sine-Gordon equation."""

__version__ = "0.1.0"

from .asymptotics import (
    SpectralParameter,
    asymptotic_eigenpairs,
    coefficient_matrix,
    exponent_sign_scan,
    large_lambda_matrix,
    limit_matrix,
    superluminal_exponents,
)
from .config import AnalysisConfig
from .lagrangian_flow import IntegrationControls, LagrangianFrame, unstable_curve
from .maslov import detect_crossings, eigenvalue_count, maslov_index
from .profile import KinkProfile, Orientation, Regime, WaveParameters, classify_wave
from .report import StabilityReport, Verdict, analyze
from .riccati import fixed_point_angles, heteroclinic_witness, real_axis_obstruction

__all__ = [
    "AnalysisConfig",
    "IntegrationControls",
    "KinkProfile",
    "LagrangianFrame",
    "Orientation",
    "Regime",
    "SpectralParameter",
    "StabilityReport",
    "Verdict",
    "WaveParameters",
    "analyze",
    "asymptotic_eigenpairs",
    "classify_wave",
    "coefficient_matrix",
    "detect_crossings",
    "eigenvalue_count",
    "exponent_sign_scan",
    "fixed_point_angles",
    "heteroclinic_witness",
    "large_lambda_matrix",
    "limit_matrix",
    "maslov_index",
    "real_axis_obstruction",
    "superluminal_exponents",
    "unstable_curve",
]
