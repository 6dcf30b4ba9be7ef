"""Command-line front end.

Exit status is 0 on success, 2 when an input violates a precondition and 3 on
a numerical failure; errors print a single line on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from ._io import atomic_write, to_csv, to_json
from .angle import (
    angle_elliptic,
    angle_quadrature,
    angle_series_large_C2,
    angle_series_sum,
    progression_angle,
)
from .classify import classify_all, format_table
from .cubic import CurveParams, admissible_lower_bound
from .errors import NumericalError, PreconditionError
from .stability import FourierPerturbation, area_preserving_Q, circle_second_variation
from .svg import emit_svg
from .trace import closure_search, integrate_profile, isoperimetric_check, rotation_index, trace_curve

__all__ = ["RunConfig", "run", "main", "build_parser", "config_from_args", "read_trace_csv", "COMMANDS"]

COMMANDS = (
    "domain", "angle", "sweep", "closure", "trace",
    "stability", "classify", "series-compare", "isoperimetric",
)
FORMATS = ("json", "csv", "svg", "text")

EXIT_OK, EXIT_PRECONDITION, EXIT_NUMERICAL = 0, 2, 3


@dataclass
class RunConfig:
    command: str
    parameters: dict = field(default_factory=dict)
    output_path: str | None = None
    output_format: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise PreconditionError(f"unknown command {self.command!r}")
        if self.output_format is not None and self.output_format not in FORMATS:
            raise PreconditionError(f"unknown output format {self.output_format!r}")


def _pool_map(fn, items, workers: int):
    """Map with results in input order regardless of completion order."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


# subcommand bodies: each returns (text, default_format)


def _cmd_domain(p):
    R = p["R"]
    C1 = np.linspace(p["C1_min"], p["C1_max"], p["num"])
    rows = [(float(c), admissible_lower_bound(float(c), R)) for c in C1]
    return to_csv(("C1", "D_C2"), rows), "csv"


def _angle_all(params):
    out = {}
    for name, fn in (("quad", angle_quadrature), ("elliptic", angle_elliptic), ("series", angle_series_sum)):
        out[name] = fn(params).as_dict()
    return out


def _cmd_angle(p):
    params = CurveParams(p["R"], p["C1"], p["C2"])
    method = p["method"]
    if method == "all":
        res = _angle_all(params)
        vals = [v["lambda_theta"] for v in res.values()]
        res["max_relative_spread"] = (max(vals) - min(vals)) / max(vals)
        return to_json(res), "json"
    res = progression_angle(params, {"quad": "quadrature"}.get(method, method))
    return to_json(res.as_dict()), "json"


def _sweep_point(args):
    R, C1, C2, method = args
    return progression_angle(CurveParams(R, C1, C2), method).lambda_theta


def _cmd_sweep(p):
    C2s = np.linspace(p["C2_min"], p["C2_max"], p["num"])
    method = {"quad": "quadrature"}.get(p["method"], p["method"])
    jobs = [(p["R"], p["C1"], float(c), method) for c in C2s]
    vals = _pool_map(_sweep_point, jobs, p["workers"])
    return to_csv(("C2", "lambda_theta"), zip(C2s.tolist(), vals)), "csv"


def _closed_trace(p):
    params = closure_search(p["p"], p["q"], p["C1"], p["R"])
    prof = integrate_profile(params, n_periods=p["q"], steps_per_period=p.get("samples_per_period"))
    tr = trace_curve(prof, p["q"])
    return params, tr


def _cmd_closure(p):
    params, tr = _closed_trace(p)
    lam = angle_elliptic(params).lambda_theta
    out = {
        "p": p["p"], "q": p["q"], "R": params.R, "C1": params.C1, "C2": params.C2,
        "lambda_theta": lam,
        "angle_residual": lam - 2.0 * math.pi * p["p"] / p["q"],
        "closure_gap": tr.closure_gap,
        "rotation_index": rotation_index(tr),
        "winding_theta": tr.winding_theta,
    }
    return to_json(out), "json"


def _cmd_trace(p):
    params, tr = _closed_trace(p)
    fmt_ = p.get("out") or "csv"
    if fmt_ == "svg":
        return emit_svg(tr, elevation=p["elevation"], azimuth=p["azimuth"]), "svg"
    kappa = tr.B**-1.5
    if fmt_ == "csv":
        rows = zip(tr.s.tolist(), tr.x[:, 0].tolist(), tr.x[:, 1].tolist(), tr.x[:, 2].tolist(),
                   tr.B.tolist(), kappa.tolist())
        return to_csv(("s", "x", "y", "z", "B", "kappa_g"), rows), "csv"
    out = {
        "R": params.R, "C1": params.C1, "C2": params.C2, "p": p["p"], "q": p["q"],
        "closure_gap": tr.closure_gap, "winding_theta": tr.winding_theta,
        "rotation_index": rotation_index(tr),
        "s": tr.s, "x": tr.x, "B": tr.B, "kappa_g": kappa,
    }
    return to_json(out), "json"


def read_trace_csv(text: str, R: float = 1.0) -> dict:
    """Closure gap and rotation index recomputed from ``trace`` CSV output.

    The winding is measured about the z axis, which the tracer aligns with the
    Killing axis.
    """
    lines = text.strip().splitlines()
    if lines[0].split(",")[:4] != ["s", "x", "y", "z"]:
        raise PreconditionError("not a trace CSV")
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    x = data[:, 1:4]
    gap = float(np.linalg.norm(x[-1] - x[0]))
    az = np.unwrap(np.arctan2(x[:, 1], x[:, 0]))
    turns = (az[-1] - az[0]) / (2.0 * math.pi)
    k = round(turns)
    if gap > 1e-6 * R or abs(turns - k) > 1e-6:
        raise PreconditionError(f"trace is not closed (gap {gap:.3e}, {turns!r} turns)")
    return {"closure_gap": gap, "rotation_index": int(k), "winding_theta": float(az[-1] - az[0])}


def _parse_number(text: str):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        return float(text)


def _cmd_stability(p):
    if p.get("z") is not None:
        z = _parse_number(str(p["z"]))
        qs = [area_preserving_Q(m, z) for m in range(1, p["m_max"] + 1)]
        worst = min(range(len(qs)), key=lambda i: qs[i])
        out = {"z": float(z), "value": float(qs[worst]), "binding_mode": worst + 1, "stable": bool(qs[worst] >= 0)}
        return to_json(out), "json"
    if p.get("modes") is None:
        raise PreconditionError("stability needs --modes or --z")
    raw = p["modes"]
    if isinstance(raw, str):
        raw = raw.split(",")
    try:
        pert = FourierPerturbation.from_flat(raw)
    except (TypeError, ValueError) as exc:
        raise PreconditionError(f"--modes expects numbers a0,a1,b1,a2,b2,...: {exc}") from None
    val = circle_second_variation(p["R"], pert)
    return to_json({"value": val, "stable": bool(val <= 0)}), "json"


def _cmd_classify(p):
    rows = classify_all(p["n_max"], include_extended_g4=p["extended_g4"])
    if (p.get("_format") or "json") == "text":
        return format_table(rows), "text"
    return to_json([r.as_dict() for r in rows]), "json"


def _compare_point(C2):
    params = CurveParams(1.0, 0.0, C2)
    q = angle_quadrature(params).lambda_theta
    e = angle_elliptic(params).lambda_theta
    s = angle_series_sum(params, terms=4).lambda_theta
    a = angle_series_large_C2(params).lambda_theta
    return (C2, q, e, s, a)


def _cmd_series_compare(p):
    C2s = np.linspace(p["C2_min"], p["C2_max"], p["num"]).tolist()
    rows = _pool_map(_compare_point, C2s, p["workers"])
    return to_csv(("C2", "quad", "elliptic", "series4", "asymptotic"), rows), "csv"


def _cmd_isoperimetric(p):
    if p.get("psi") is not None:
        psis = [p["psi"]]
    else:
        n = p["num"]
        psis = [0.5 * math.pi * (i + 1) / (n + 1) for i in range(n)]
    rows = [(s, *isoperimetric_check(s)) for s in psis]
    if (p.get("_format") or "csv") == "json":
        return to_json([{"psi": a, "lhs": b, "rhs": c} for a, b, c in rows]), "json"
    return to_csv(("psi", "lhs", "rhs"), rows), "csv"


_DISPATCH = {
    "domain": _cmd_domain,
    "angle": _cmd_angle,
    "sweep": _cmd_sweep,
    "closure": _cmd_closure,
    "trace": _cmd_trace,
    "stability": _cmd_stability,
    "classify": _cmd_classify,
    "series-compare": _cmd_series_compare,
    "isoperimetric": _cmd_isoperimetric,
}

# built-in defaults per command; config files and flags override these
DEFAULTS = {
    "domain": {"R": 1.0, "C1_min": -10.0, "C1_max": 10.0, "num": 201},
    "angle": {"R": 1.0, "C1": 0.0, "C2": None, "method": "all"},
    "sweep": {"R": 1.0, "C1": 0.0, "C2_min": None, "C2_max": None, "num": 100, "method": "auto", "workers": 1},
    "closure": {"p": None, "q": None, "C1": 0.0, "R": 1.0, "samples_per_period": None},
    "trace": {"p": None, "q": None, "C1": 0.0, "R": 1.0, "samples_per_period": None, "out": "csv",
              "elevation": 90.0, "azimuth": 0.0},
    "stability": {"R": 1.0, "modes": None, "z": None, "m_max": 50},
    "classify": {"n_max": 24, "extended_g4": False},
    "series-compare": {"C2_min": 5.0, "C2_max": 20.0, "num": 31, "workers": 1},
    "isoperimetric": {"psi": None, "num": 100},
}


def run(config: RunConfig, stdout=None, stderr=None) -> int:
    """Execute one command; returns the process exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    params = dict(DEFAULTS[config.command])
    params.update({k.replace("-", "_"): v for k, v in config.parameters.items()})
    params["_format"] = config.output_format
    try:
        missing = [k for k, v in params.items() if v is None and k in _REQUIRED.get(config.command, ())]
        if missing:
            raise PreconditionError(f"missing required parameter(s): {', '.join(missing)}")
        text, _ = _DISPATCH[config.command](params)
        if config.output_path:
            atomic_write(config.output_path, text)
        else:
            stdout.write(text)
        return EXIT_OK
    except PreconditionError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PRECONDITION
    except (NumericalError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=stderr)
        return EXIT_NUMERICAL


_REQUIRED = {
    "angle": ("C2",),
    "sweep": ("C2_min", "C2_max"),
    "closure": ("p", "q"),
    "trace": ("p", "q"),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ecaffine", description="Equi-centro-affine extremal curves and hypersurfaces.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        # SUPPRESS keeps unset flags out of the namespace so config values survive
        S = argparse.SUPPRESS
        sp.add_argument("--config", default=S, help="JSON file with a 'parameters' map (flags override it)")
        sp.add_argument("--output", "-o", default=S, help="write to this path atomically instead of stdout")
        sp.add_argument("--format", dest="format", choices=FORMATS, default=S)
        return S

    sp = sub.add_parser("domain", help="admissibility boundary D(C1) as CSV")
    S = common(sp)
    sp.add_argument("--R", type=float, default=S)
    sp.add_argument("--C1-min", dest="C1_min", type=float, default=S)
    sp.add_argument("--C1-max", dest="C1_max", type=float, default=S)
    sp.add_argument("--num", type=int, default=S)

    sp = sub.add_parser("angle", help="progression angle for one parameter set")
    common(sp)
    sp.add_argument("--R", type=float, default=S)
    sp.add_argument("--C1", type=float, default=S)
    sp.add_argument("--C2", type=float, default=S)
    sp.add_argument("--method", choices=("quad", "elliptic", "series", "asymptotic", "auto", "all"), default=S)

    sp = sub.add_parser("sweep", help="progression angle over a C2 range as CSV")
    common(sp)
    sp.add_argument("--R", type=float, default=S)
    sp.add_argument("--C1", type=float, default=S)
    sp.add_argument("--C2-min", dest="C2_min", type=float, default=S)
    sp.add_argument("--C2-max", dest="C2_max", type=float, default=S)
    sp.add_argument("--num", type=int, default=S)
    sp.add_argument("--method", choices=("quad", "elliptic", "series", "auto"), default=S)
    sp.add_argument("--workers", type=int, default=S)

    for name, hlp in (("closure", "find C2 closing a (p, q) curve"), ("trace", "trace a closed (p, q) curve")):
        sp = sub.add_parser(name, help=hlp)
        common(sp)
        sp.add_argument("--p", type=int, default=S)
        sp.add_argument("--q", type=int, default=S)
        sp.add_argument("--C1", type=float, default=S)
        sp.add_argument("--R", type=float, default=S)
        sp.add_argument("--samples-per-period", dest="samples_per_period", type=int, default=S)
        if name == "trace":
            sp.add_argument("--out", choices=("csv", "json", "svg"), default=S)
            sp.add_argument("--elevation", type=float, default=S)
            sp.add_argument("--azimuth", type=float, default=S)

    sp = sub.add_parser("stability", help="circle second variation or area-preserving window test")
    common(sp)
    sp.add_argument("--R", type=float, default=S)
    sp.add_argument("--modes", default=S, help="a0,a1,b1,a2,b2,...")
    sp.add_argument("--z", default=S, help="B^3/R^2, decimal or fraction such as 7/5")
    sp.add_argument("--m-max", dest="m_max", type=int, default=S)

    sp = sub.add_parser("classify", help="isoparametric extremal hypersurfaces up to dimension n-max")
    common(sp)
    sp.add_argument("--n-max", dest="n_max", type=int, default=S)
    sp.add_argument("--extended-g4", dest="extended_g4", action="store_true", default=S)

    sp = sub.add_parser("series-compare", help="quadrature, elliptic, series and asymptotic angles as CSV")
    common(sp)
    sp.add_argument("--C2-min", dest="C2_min", type=float, default=S)
    sp.add_argument("--C2-max", dest="C2_max", type=float, default=S)
    sp.add_argument("--num", type=int, default=S)
    sp.add_argument("--workers", type=int, default=S)

    sp = sub.add_parser("isoperimetric", help="isoperimetric equality for circles")
    common(sp)
    sp.add_argument("--psi", type=float, default=S)
    sp.add_argument("--num", type=int, default=S)
    return ap


def config_from_args(argv=None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    command = ns.pop("command")
    params: dict = {}
    out_path = None
    out_fmt = None
    cfg_path = ns.pop("config", None)
    if cfg_path:
        try:
            raw = json.loads(Path(cfg_path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise PreconditionError(f"cannot read config {cfg_path}: {exc}") from exc
        if raw.get("command", command) != command:
            raise PreconditionError(f"config is for {raw['command']!r}, not {command!r}")
        params.update({k.replace("-", "_"): v for k, v in raw.get("parameters", {}).items()})
        out_path = raw.get("output_path")
        out_fmt = raw.get("output_format")
    out_path = ns.pop("output", out_path)
    out_fmt = ns.pop("format", out_fmt)
    params.update(ns)
    unknown = set(params) - set(DEFAULTS[command])
    if unknown:
        raise PreconditionError(f"unknown parameter(s) for {command}: {', '.join(sorted(unknown))}")
    return RunConfig(command, params, out_path, out_fmt)


def main(argv=None) -> int:
    try:
        config = config_from_args(argv)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    return run(config)
