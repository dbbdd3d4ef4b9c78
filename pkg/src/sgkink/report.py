"""End-to-end stability analysis for one wave speed."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .asymptotics import ExponentScan, exponent_sign_scan
from .config import AnalysisConfig
from .errors import SGKinkError
from .lagrangian_flow import IntegrationControls
from .maslov import FAR_FIELD_TOL, GUARD_TAU, MaslovResult, maslov_sweep
from .parallel import ordered_map
from .profile import KinkProfile, Regime, classify_wave
from .riccati import heteroclinic_witness, real_axis_obstruction, spectral_parameter_grid

ZERO_LAMBDA = 1e-12

IMAGINARY_AXIS_NOTE = (
    "Only point spectrum off the imaginary axis is examined; no statement is made "
    "about eigenvalues with zero real part."
)
TRANSLATION_NOTE = (
    "lam = 0 is the translation eigenvalue (eigenfunction v_z); the unstable curve "
    "reaches xi_s only at z = +inf, so it is not a regular crossing."
)


class Verdict(str, enum.Enum):
    STABLE = "SpectrallyStable"
    CANDIDATE = "EigenvalueCandidateFound"
    INCONCLUSIVE = "Inconclusive"


def _cplx(x) -> dict:
    x = complex(x)
    return {"re": x.real, "im": x.imag}


@dataclass
class StabilityReport:
    c: float
    regime: Regime
    verdict: Verdict
    real_axis_evidence: list[MaslovResult] = field(default_factory=list)
    complex_plane_evidence: list[dict] = field(default_factory=list)
    superluminal_evidence: ExponentScan | None = None
    candidates: list[dict] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "c": self.c,
            "regime": self.regime.value,
            "verdict": self.verdict.value,
            "candidates": self.candidates,
            "errors": self.errors,
            "notes": self.notes,
        }
        if self.regime is Regime.SUBLUMINAL:
            out["real_axis"] = [r.to_dict() for r in self.real_axis_evidence]
            out["complex_plane"] = self.complex_plane_evidence
        elif self.superluminal_evidence is not None:
            scan = self.superluminal_evidence
            out["superluminal"] = {
                "all_signs_agree": scan.all_signs_agree,
                "degenerate_points": [{"c": c, "lambda": _cplx(lam)} for c, lam in scan.degenerate_points],
                "derivative_sign_mismatches": len(scan.derivative_mismatches),
                "samples": [
                    {
                        "lambda": _cplx(s.lam),
                        "r1": _cplx(s.r1),
                        "r2": _cplx(s.r2),
                        "sign_re_r1": s.sign_r1,
                        "sign_re_r2": s.sign_r2,
                        "dre_r1_dc": s.dre_r1_dc,
                        "dre_r2_dc": s.dre_r2_dc,
                    }
                    for s in scan.valid
                ],
            }
        out["provenance"] = self.provenance
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _complex_job(args):
    profile, lam, controls = args
    entry = {"lambda": _cplx(lam.value)}
    try:
        signs = real_axis_obstruction(profile.params, lam)
        witness = heteroclinic_witness(profile, lam, controls, keep_trajectory=False)
    except SGKinkError as exc:
        entry["error"] = f"{type(exc).__name__}: {exc}"
        return entry
    entry.update(
        eta_sign=signs.eta_sign,
        zeta_sign=signs.zeta_sign,
        eta_u=_cplx(witness.eta_u),
        eta_s=_cplx(witness.eta_s),
        witness=witness.to_dict(),
    )
    return entry


def _analyze_subluminal(report: StabilityReport, profile: KinkProfile, config: AnalysisConfig, jobs: int):
    controls = config.controls
    grid = np.linspace(-config.lambda_max, config.lambda_max, config.lambda_steps)
    grid[np.abs(grid) < ZERO_LAMBDA] = 0.0
    inconclusive = False
    try:
        sweep = maslov_sweep(profile, grid, controls, jobs=jobs)
    except SGKinkError as exc:
        report.errors.append(f"real axis: {type(exc).__name__}: {exc}")
        sweep = None
    if sweep is not None:
        report.real_axis_evidence = sweep.results
        for res in sweep.results:
            if res.count:
                report.candidates.append(
                    {"source": "maslov", "lambda": _cplx(res.lam), "crossings": res.count}
                )
            elif res.endpoint_crossings and res.lam != 0.0:
                report.candidates.append(
                    {"source": "maslov-endpoint", "lambda": _cplx(res.lam), "crossings": len(res.endpoint_crossings)}
                )
        if sweep.grid_crossing_jump:
            report.notes.append(f"crossing count jumps by >= 2 between grid points {sweep.grid_jumps}")
            inconclusive = True

    tasks = [(profile, lam, controls) for lam in spectral_parameter_grid(
        config.complex_re_max, config.complex_im_max, config.complex_steps)]
    entries = ordered_map(_complex_job, tasks, jobs)
    report.complex_plane_evidence = entries
    for entry in entries:
        if "error" in entry:
            report.errors.append(f"complex lam {entry['lambda']}: {entry['error']}")
            continue
        verdict = entry["witness"]["verdict"]
        if entry["eta_sign"] != 1 or entry["zeta_sign"] != -1 or verdict == "eigenvalue candidate":
            report.candidates.append({"source": "riccati", "lambda": entry["lambda"], "verdict": verdict})
        elif verdict != "no eigenvalue":
            inconclusive = True
    report.notes.append(TRANSLATION_NOTE)
    return inconclusive


def _analyze_superluminal(report: StabilityReport, c: float, config: AnalysisConfig):
    lams = [lam.value for lam in spectral_parameter_grid(
        config.complex_re_max, config.complex_im_max, config.complex_steps)]
    # real lam axis as well, where the exponents are real
    lams += list(np.linspace(config.complex_re_max / config.complex_steps, config.complex_re_max, config.complex_steps))
    scan = exponent_sign_scan([c], lams)
    report.superluminal_evidence = scan
    for s in scan.valid:
        if not s.signs_agree:
            report.candidates.append({"source": "exponents", "lambda": _cplx(s.lam)})
    if not scan.valid:
        return True
    if scan.derivative_mismatches:
        report.notes.append(
            f"d Re r / dc differs in sign from Re lam at {len(scan.derivative_mismatches)} grid point(s); "
            "this does not affect the sign-agreement verdict"
        )
    return False


def analyze(c: float, config: AnalysisConfig | None = None, *, jobs: int = 1) -> StabilityReport:
    """Run the full stability pipeline for wave speed ``c``.

    Sub-module failures are recorded and turn the verdict into
    ``Inconclusive``; they never produce a silent pass.  An invalid speed
    (``c`` within the degeneracy threshold of 1) raises ``DegenerateSpeed``.
    """
    config = config or AnalysisConfig()
    params = classify_wave(c)
    controls: IntegrationControls = config.controls
    report = StabilityReport(
        c=params.c,
        regime=params.regime,
        verdict=Verdict.INCONCLUSIVE,
        notes=[IMAGINARY_AXIS_NOTE],
        provenance={
            "tool": "sgkink",
            "version": __version__,
            "config": config.to_dict(),
            "integrator": {"method": controls.method, "tol": controls.tol, "max_step": controls.max_step},
            "crossing_guard": {"tau": GUARD_TAU, "far_field": FAR_FIELD_TOL},
        },
    )
    if params.subluminal:
        inconclusive = _analyze_subluminal(report, KinkProfile(params), config, jobs)
    else:
        inconclusive = _analyze_superluminal(report, params.c, config)
    if report.errors or (inconclusive and not report.candidates):
        report.verdict = Verdict.INCONCLUSIVE
    elif report.candidates:
        report.verdict = Verdict.CANDIDATE
    else:
        report.verdict = Verdict.STABLE
    return report
