"""Command-line front end.

Subcommands: ``profile``, ``exponents``, ``flow``, ``maslov``, ``riccati`` and
``report``.  Exit status is 0 on success, 1 when a computation fails and 2 on
usage errors.  Files given with ``--out`` are written atomically.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import re
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .asymptotics import exponent_sign_scan
from .config import AnalysisConfig
from .errors import SGKinkError
from .lagrangian_flow import IntegrationControls, unstable_curve
from .maslov import maslov_sweep
from .parallel import ordered_map
from .profile import KinkProfile, sample_profile
from .report import analyze
from .riccati import fixed_points, heteroclinic_witness, real_axis_obstruction

log = logging.getLogger("sgkink")

_COMPLEX_RE = re.compile(
    r"""^\s*(?:
        (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-]?(?:inf|nan))
        (?P<im>[+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij])?
      |
        (?P<imonly>[+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij])
    )\s*$""",
    re.VERBOSE,
)


def _imag_part(text: str) -> float:
    body = text[:-1]
    if body in ("", "+"):
        return 1.0
    if body == "-":
        return -1.0
    return float(body)


def parse_complex(text: str) -> complex:
    """Parse ``"a+bi"``, ``"a-bi"``, ``"bi"`` or ``"a"`` (``j`` also accepted)."""
    match = _COMPLEX_RE.match(text)
    if not match:
        raise ValueError(f"cannot parse {text!r} as a complex number (expected forms a, bi, a+bi, a-bi)")
    if match.group("imonly") is not None:
        return complex(0.0, _imag_part(match.group("imonly")))
    real = float(match.group("re"))
    imag = _imag_part(match.group("im")) if match.group("im") else 0.0
    return complex(real, imag)


def format_complex(x: complex) -> str:
    """Inverse of :func:`parse_complex`, exact for finite values."""
    x = complex(x)
    sign = "-" if math.copysign(1.0, x.imag) < 0 else "+"
    return f"{x.real!r}{sign}{abs(x.imag)!r}i"


def _arg_complex(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _arg_count(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError(f"expected an integer >= 2, got {n}")
    return n


def _arg_positive(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (math.isfinite(x) and x > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return x


def _arg_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX:N, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX:N, got {text!r}") from None
    if n < 1 or (n > 1 and not hi > lo):
        raise argparse.ArgumentTypeError(f"range {text!r} needs N >= 1 and MAX > MIN")
    return lo, hi, n


def _arg_scan(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected CMIN:CMAX:N,REMIN:REMAX:N,IMMIN:IMMAX:N, got {text!r}")
    return tuple(_arg_range(p) for p in parts)


def _linspace(spec):
    lo, hi, n = spec
    return np.linspace(lo, hi, n) if n > 1 else np.array([lo])


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _cplx(x) -> dict:
    x = complex(x)
    return {"re": x.real, "im": x.imag}


def write_output(text: str, out: str | None):
    """Write to ``out`` through a temporary file and rename, or to stdout."""
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(out)
    fd, tmp = tempfile.mkstemp(dir=target.parent if str(target.parent) else ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


# -- subcommands -------------------------------------------------------------


def cmd_profile(args) -> str:
    profile = KinkProfile.from_speed(args.c)
    z, v, vz = sample_profile(profile, args.z_min, args.z_max, args.samples)
    if args.format == "json":
        return json.dumps({"c": profile.c, "z": z.tolist(), "v": v.tolist(), "v_z": vz.tolist()}, indent=2) + "\n"
    return _csv_text(["z", "v", "v_z"], zip(z, v, vz))


_EXP_HEADER = [
    "c", "lambda_re", "lambda_im", "r1_re", "r1_im", "r2_re", "r2_im",
    "sign_re_r1", "sign_re_r2", "signs_agree", "dre_r1_dc", "dre_r2_dc", "degenerate",
]


def cmd_exponents(args) -> str:
    if args.scan is not None:
        c_spec, re_spec, im_spec = args.scan
        c_grid = _linspace(c_spec)
        lams = [complex(a, b) for a in _linspace(re_spec) for b in _linspace(im_spec)]
    else:
        if args.c is None:
            raise UsageError("exponents needs --c (with --lambda or --random) or --scan")
        c_grid = [args.c]
        if args.random:
            rng = np.random.default_rng(args.seed)
            lams = [complex(a, b) for a, b in rng.uniform(0.0, 3.0, size=(args.random, 2))]
        elif args.lam is not None:
            lams = [args.lam]
        else:
            raise UsageError("exponents needs --lambda, --random or --scan")
    scan = exponent_sign_scan(c_grid, lams)
    rows = []
    for s in scan.samples:
        r1 = s.r1 if s.r1 is not None else complex(math.nan, math.nan)
        r2 = s.r2 if s.r2 is not None else complex(math.nan, math.nan)
        rows.append([
            s.c, s.lam.real, s.lam.imag, r1.real, r1.imag, r2.real, r2.imag,
            s.sign_r1, s.sign_r2, int(s.signs_agree), s.dre_r1_dc, s.dre_r2_dc, int(s.degenerate),
        ])
    if args.format == "json":
        records = [
            {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in zip(_EXP_HEADER, row)}
            for row in rows
        ]
        summary = {"all_signs_agree": scan.all_signs_agree, "samples": records}
        return json.dumps(summary, indent=2) + "\n"
    return _csv_text(_EXP_HEADER, rows)


def cmd_flow(args) -> str:
    profile = KinkProfile.from_speed(args.c)
    controls = IntegrationControls(epsilon=args.epsilon, tol=args.tol)
    record = unstable_curve(profile, args.lam, controls)
    frames = record.frames()
    rows = zip(record.tau, record.z, record.theta, frames[:, 0], frames[:, 1])
    return _csv_text(["tau", "z", "theta", "w1", "w2"], rows)


def cmd_maslov(args) -> str:
    if not args.lambda_max > args.lambda_min:
        raise UsageError("--lambda-max must exceed --lambda-min")
    profile = KinkProfile.from_speed(args.c)
    grid = np.linspace(args.lambda_min, args.lambda_max, args.steps)
    sweep = maslov_sweep(profile, grid, IntegrationControls(epsilon=args.epsilon, tol=args.tol), jobs=args.jobs)
    if args.format == "csv":
        rows = [[r.lam, r.count, r.index, len(r.endpoint_crossings)] for r in sweep.results]
        return _csv_text(["lambda", "count", "index", "endpoint_crossings"], rows)
    payload = {"c": profile.c, "results": [r.to_dict() for r in sweep.results]}
    return json.dumps(payload, indent=2) + "\n"


def _riccati_job(args):
    profile, lam, controls = args
    fp = fixed_points(profile.params, lam)
    out = {"c": profile.c, "lambda": _cplx(lam), "eta_u": _cplx(fp.eta_u), "eta_s": _cplx(fp.eta_s)}
    try:
        signs = real_axis_obstruction(profile.params, lam)
        witness = heteroclinic_witness(profile, lam, controls, keep_trajectory=False)
    except SGKinkError as exc:
        out.update(eta_sign=None, zeta_sign=None, witness={"min_im_eta": None, "verdict": f"error: {exc}"})
        return out
    out.update(
        eta_sign=signs.eta_sign,
        zeta_sign=signs.zeta_sign,
        witness={"min_im_eta": witness.min_im_eta, "verdict": witness.verdict},
    )
    return out


def cmd_riccati(args) -> str:
    profile = KinkProfile.from_speed(args.c)
    controls = IntegrationControls(epsilon=args.epsilon, tol=args.tol)
    if args.scan_re is not None or args.scan_im is not None:
        if args.scan_re is None or args.scan_im is None:
            raise UsageError("--scan-re and --scan-im must be given together")
        lams = [complex(a, b) for a in _linspace(args.scan_re) for b in _linspace(args.scan_im)]
        results = ordered_map(_riccati_job, [(profile, lam, controls) for lam in lams], args.jobs)
        return json.dumps({"c": profile.c, "results": results}, indent=2) + "\n"
    if args.lam is None:
        raise UsageError("riccati needs --lambda or --scan-re/--scan-im")
    return json.dumps(_riccati_job((profile, args.lam, controls)), indent=2) + "\n"


def cmd_report(args) -> str:
    config = AnalysisConfig.from_file(args.config) if args.config else AnalysisConfig()
    report = analyze(args.c, config, jobs=args.jobs)
    log.info("c=%s verdict=%s", report.c, report.verdict.value)
    return report.to_json()


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # Subcommand copies use SUPPRESS so they do not clobber values given
        # before the subcommand name.
        def default(value):
            return argparse.SUPPRESS if suppress else value

        flags = argparse.ArgumentParser(add_help=False)
        flags.add_argument("--jobs", type=int, default=default(1), help="parallel workers for grid evaluations")
        flags.add_argument("--seed", type=int, default=default(0), help="seed for randomised grids")
        flags.add_argument("--quiet", action="store_true", default=default(False), help="suppress progress logging")
        flags.add_argument("--out", default=default(None), help="output path (default: standard output)")
        return flags

    common = global_flags(True)
    parser = argparse.ArgumentParser(prog="sgkink", description=__doc__.splitlines()[0], parents=[global_flags(False)])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", parents=[common], help="sample the subluminal kink profile")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--z-min", type=float, default=-10.0)
    p.add_argument("--z-max", type=float, default=10.0)
    p.add_argument("--samples", type=_arg_count, default=201)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("exponents", parents=[common], help="superluminal characteristic exponents")
    p.add_argument("--c", type=float)
    p.add_argument("--lambda", dest="lam", type=_arg_complex)
    p.add_argument("--random", type=int, default=0, help="draw N random lambda in (0,3] x (0,3]")
    p.add_argument("--scan", type=_arg_scan, help="CMIN:CMAX:N,REMIN:REMAX:N,IMMIN:IMMAX:N")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("flow", parents=[common], help="unstable curve of lines for real lambda")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--epsilon", type=_arg_positive, default=1e-3)
    p.add_argument("--tol", type=_arg_positive, default=1e-10)
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("maslov", parents=[common], help="crossing counts along a real lambda grid")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--lambda-min", type=float, default=-10.0)
    p.add_argument("--lambda-max", type=float, default=10.0)
    p.add_argument("--steps", type=_arg_count, default=101)
    p.add_argument("--epsilon", type=_arg_positive, default=1e-3)
    p.add_argument("--tol", type=_arg_positive, default=1e-10)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_maslov)

    p = sub.add_parser("riccati", parents=[common], help="Riccati obstruction and witness for complex lambda")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=_arg_complex)
    p.add_argument("--scan-re", type=_arg_range, help="MIN:MAX:N")
    p.add_argument("--scan-im", type=_arg_range, help="MIN:MAX:N")
    p.add_argument("--epsilon", type=_arg_positive, default=1e-3)
    p.add_argument("--tol", type=_arg_positive, default=1e-10)
    p.set_defaults(func=cmd_riccati)

    p = sub.add_parser("report", parents=[common], help="full stability report")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--config", default=None, help="flat key = value configuration file")
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(name)s: %(message)s")
    if args.jobs < 1:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: argument --jobs: expected a positive integer, got {args.jobs}", file=sys.stderr)
        return 2
    try:
        text = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (SGKinkError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    write_output(text, args.out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
