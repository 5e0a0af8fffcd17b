"""Command-line front end.

    curvelast base-state|dispersion|bifurcation|verify --config FILE [--key value ...]

Inputs may be dimensional. Internally mu = A = 1: gamma and alpha_s scale by
mu*A, beta_s by mu*A^3, H0 and k by 1/A, D by mu. Outputs are restored to user
units (k, F_z); Omega is reported in the internal normalization.
"""

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from . import dispersion as disp
from .base_state import BaseState, NoBracket
from .bulk_material import BulkMaterial
from .config import ConfigError, RunConfig, load_config
from .surface_material import SurfaceModel
from . import verification

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_BRACKET = 2
EXIT_VERIFY_BASE = 2
EXIT_CAP = 125


def fmt(x) -> str:
    """12 significant digits, '.' separator, independent of locale."""
    if isinstance(x, str):
        return x
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    return format(float(x), ".12g")


@dataclass(frozen=True)
class Internal:
    """Nondimensional problem derived from a RunConfig."""

    mat: Optional[BulkMaterial]
    surf: SurfaceModel
    closed_form: bool
    mu: float
    radius: float
    label: str

    def k_in(self, k: float) -> float:
        return k * self.radius

    def k_out(self, k: float) -> float:
        return k / self.radius


def nondimensionalize(cfg: RunConfig) -> Internal:
    mu, rad = cfg.mu, cfg.radius
    gamma, alpha = cfg.gamma / (mu * rad), cfg.alpha_s / (mu * rad)
    beta, h0 = cfg.beta_s / (mu * rad ** 3), cfg.h0 * rad
    if cfg.model == "tension":
        surf = SurfaceModel.tension(gamma)
    elif cfg.model == "stretch":
        surf = SurfaceModel.stretch(gamma, alpha)
    else:
        surf = SurfaceModel.helfrich(gamma, beta, h0)
    if not cfg.incompressible:
        return Internal(BulkMaterial(1.0, cfg.d_modulus / mu), surf, False, mu, rad,
                        "compressible: det/(q1^2 - q2^2), modes scaled by 1/(s exp(s aA)), mu = A = 1")
    proxy = BulkMaterial(1.0, disp.INCOMPRESSIBLE_PROXY)
    if cfg.model in ("helfrich", "tension"):
        if cfg.model == "tension":
            surf = SurfaceModel.helfrich(gamma, 0.0, 0.0)
        return Internal(proxy, surf, True, mu, rad,
                        "incompressible closed form divided by (lambda^3 - 1), mu = A = 1")
    return Internal(proxy, surf, False, mu, rad,
                    "incompressible proxy D = 1e8 mu: det/(q1^2 - q2^2), modes scaled by 1/(s exp(s aA)), mu = A = 1")


def _params(cfg: RunConfig) -> dict:
    out = {}
    for f in fields(cfg):
        val = getattr(cfg, f.name)
        if f.name in ("output_path", "format", "workers") or val is None:
            continue
        out["lambda" if f.name == "lam" else f.name] = list(val) if isinstance(val, tuple) else val
    return out


# ------------------------------------------------------------------ commands

def cmd_base_state(cfg: RunConfig) -> tuple:
    if cfg.lam is None:
        raise ConfigError("base-state needs lambda")
    prob = nondimensionalize(cfg)
    base = BaseState.solve(cfg.lam, prob.mat, prob.surf)
    report = {
        "lambda": cfg.lam,
        "a": base.a,
        "F_z": base.axial_force * cfg.mu * cfg.radius ** 2,
        "residual": base.residual,
        "nu": 0.5 if cfg.incompressible else prob.mat.nu,
    }
    meta = {"normalization": "F_z in user units; residual in units of mu A^3"
            + ("; incompressible proxy D = 1e8 mu" if cfg.incompressible else ""),
            "model": cfg.model, "params": _params(cfg)}
    return ["lambda", "a", "F_z", "residual", "nu"], [report], meta


def _omega_row(prob: Internal, k_user: float, lam: float) -> dict:
    k = prob.k_in(k_user)
    row = {"k": k_user, "lambda": lam, "omega": float("nan"), "status": "ok"}
    try:
        if prob.closed_form:
            s = prob.surf
            row["omega"] = disp.dispersion_det_incompressible_reduced(k, lam, s.gamma, s.beta_s, s.h0)
        else:
            result = disp.dispersion_problem(k, BaseState.solve(lam, prob.mat, prob.surf))
            row["omega"] = result.omega
            if result.degenerate:
                row["status"] = "degenerate"
    except NoBracket:
        row["status"] = "no_base_state"
    except disp.NotARoot:
        row["status"] = "mode_error"
    return row


def _grid(rng: tuple) -> list:
    lo, hi = rng[0], rng[1]
    steps = int(rng[2]) if len(rng) == 3 else 1
    if steps == 1:
        return [lo]
    return [float(x) for x in np.linspace(lo, hi, steps)]


def cmd_dispersion(cfg: RunConfig) -> tuple:
    prob = nondimensionalize(cfg)
    if cfg.lam is not None and cfg.k_range is not None:
        points = [(k, cfg.lam) for k in _grid(cfg.k_range)]
    elif cfg.k is not None and cfg.lambda_range is not None and len(cfg.lambda_range) == 3:
        points = [(cfg.k, lam) for lam in _grid(cfg.lambda_range)]
    else:
        raise ConfigError("dispersion needs lambda with k_range, or k with lambda_range = lo, hi, steps")
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        rows = list(pool.map(lambda p: _omega_row(prob, *p), points))
    meta = {"normalization": prob.label, "model": cfg.model, "params": _params(cfg)}
    return ["k", "lambda", "omega", "status"], rows, meta


def cmd_bifurcation(cfg: RunConfig) -> tuple:
    if cfg.k_range is None or cfg.lambda_range is None:
        raise ConfigError("bifurcation needs k_range and lambda_range")
    prob = nondimensionalize(cfg)
    ks = [prob.k_in(k) for k in _grid(cfg.k_range)]
    bracket = (cfg.lambda_range[0], cfg.lambda_range[1])
    curve = disp.bifurcation_curve(ks, prob.mat, prob.surf, 1.0, bracket, incompressible=prob.closed_form)
    rows = [{"k": prob.k_out(p.k), "lambda_crit": p.lambda_crit, "a": p.a,
             "omega_residual": p.omega_residual, "status": p.status} for p in curve]
    meta = {"normalization": prob.label, "model": cfg.model, "params": _params(cfg)}
    return ["k", "lambda_crit", "a", "omega_residual", "status"], rows, meta


def cmd_verify(cfg: Optional[RunConfig] = None, moduli_hook=None) -> tuple:
    results = verification.run_all(moduli_hook=moduli_hook)
    failed = sum(not r.passed for r in results)
    code = EXIT_OK if failed == 0 else min(EXIT_VERIFY_BASE + failed, EXIT_CAP)
    return results, code


# ------------------------------------------------------------------- output

def render_csv(header: list, rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(row[h]) for h in header])
    return buf.getvalue()


def _json_value(x):
    if isinstance(x, float):
        return float(fmt(x)) if math.isfinite(x) else None
    return x


def render_json(meta: dict, rows: list) -> str:
    clean = [{k: _json_value(v) for k, v in row.items()} for row in rows]
    return json.dumps({"meta": meta, "rows": clean}, indent=2) + "\n"


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -------------------------------------------------------------------- parser

_OVERRIDES = ("mu", "d_modulus", "gamma", "alpha_s", "beta_s", "h0", "radius", "model",
              "incompressible", "lambda", "lambda_range", "k", "k_range", "format", "workers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvelast", description="Bifurcation of coated soft cylinders.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("base-state", "dispersion", "bifurcation", "verify"):
        p = sub.add_parser(name)
        p.add_argument("--config", help="flat key = value file")
        p.add_argument("--out", dest="output_path", help="output file (default stdout)")
        for key in _OVERRIDES:
            flags = [f"--{key}"]
            if "_" in key:
                flags.append(f"--{key.replace('_', '-')}")
            p.add_argument(*flags, dest=f"ov_{key}", default=None)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    overrides = {k[3:]: v for k, v in vars(args).items() if k.startswith("ov_") and v is not None}
    if args.output_path:
        overrides["output_path"] = args.output_path
    return cfg.with_overrides(overrides)


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command != "verify":
            cfg.validate()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.command == "verify":
        results, code = cmd_verify(cfg)
        for r in results:
            line = f"{'PASS' if r.passed else 'FAIL'} {r.name} (worst {r.worst:.3g})"
            print(line)
            for f in r.failures[:10]:
                print(f"    {f}")
            if r.name in ("q2_probe", "k0_consistency"):
                for key, val in r.details.items():
                    if isinstance(val, dict):
                        val = ", ".join(f"{k} = {fmt(v)}" for k, v in val.items())
                    print(f"    {key}: {val}")
        if cfg.output_path:
            report = {"meta": {"normalization": "verification", "model": "all", "params": {}},
                      "rows": [r.as_dict() for r in results], "exit_code": code}
            _emit(json.dumps(report, indent=2, default=str) + "\n", cfg.output_path)
        return code
    commands = {"base-state": cmd_base_state, "dispersion": cmd_dispersion, "bifurcation": cmd_bifurcation}
    try:
        header, rows, meta = commands[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NoBracket as exc:
        print(f"no bracket: {exc}", file=sys.stderr)
        return EXIT_BRACKET
    text = render_json(meta, rows) if cfg.format == "json" else render_csv(header, rows)
    _emit(text, cfg.output_path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
