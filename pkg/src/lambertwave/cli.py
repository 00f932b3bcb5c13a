"""Pipeline orchestration and artifact emission.

Single binary with subcommands; configuration precedence is CLI flags over
a JSON config file over built-in defaults.  Artifacts are CSV (17
significant digits, LF line endings, header row) plus a JSON manifest with
the complete resolved configuration, checksums, and timings.  Exit codes:
0 success, 1 verification failure, 2 usage/config error, 3 numeric or
resolution error.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from .bell import build_wavelet
from .errors import (
    ConvergenceError,
    DomainError,
    InputError,
    LambertwaveError,
    ResolutionError,
    VerificationError,
)
from .gevrey import SequenceParams, assoc_t_exact
from .grids import GridSpec
from .lambert import WEvalConfig, lambert_w0, w_bounds_check
from .mollifier import build_mollifier, derivative_bound_audit
from .verify import (
    completeness_check,
    decay_envelope,
    derivative_decay_check,
    dyadic_sum_check,
    fit_decay,
    gram_matrix,
    intercept_growth_fit,
    mixed_bound_audit,
)

ENV_OUT_DIR = "LAMBERTWAVE_OUT"


@dataclass
class RunConfig:
    # construction
    sigma: float = 2.0
    a: float = math.pi / 6.0
    grid_pow: int = 17
    freq_pow: int = 16
    period: float = 2.0 ** 18
    samples: int = 2 ** 22
    moll_base: str = "analytic"
    moll_base_width: float = 1.0
    moll_cutoff: float = 0.0       # 0 -> one grid cell
    m_max: int = 8
    profile_base: str = "cone"
    profile_base_width: float = 1.0
    profile_cutoff: float = 0.2
    # verification
    gram_tol: float = 1e-7
    dyadic_tol: float = 1e-9
    r2_min: float = 0.9
    completeness_tol: float = 1e-3
    env_floor: float = 1e-15
    audit_n_max: int = 8
    gram_m: int = 2
    gram_n: int = 8
    dyadic_window: int = 6
    fit_xmin: float = 1e2
    fit_xmax: float = 3e4
    fit_points: int = 36
    deriv_orders: str = "1,2,4,8"
    mixed_k_max: int = 8
    mixed_q_max: int = 8
    mixed_s: float = 1.0
    mixed_tau: float = 1.0
    # tables
    xmin: float = 1e-6
    xmax: float = 1e8
    points: int = 1000
    log: bool = True
    tau: float = 1.0
    kmin: float = 1e3
    kmax: float = 1e12
    kpoints: int = 40
    psi_xmax: float = 512.0
    # io
    out_dir: str = ""
    moll_out: str = "phi.csv"


def _validate(cfg: RunConfig) -> None:
    checks = [
        ("sigma", cfg.sigma > 1.0, "must exceed 1"),
        ("a", 0.0 < cfg.a < math.pi / 3.0,
         f"must lie in (0, pi/3 = {math.pi / 3.0:.16g})"),
        ("grid_pow", 8 <= cfg.grid_pow <= 24, "must lie in [8, 24]"),
        ("freq_pow", 10 <= cfg.freq_pow <= 24, "must lie in [10, 24]"),
        ("period", cfg.period > 0, "must be positive"),
        ("samples", cfg.samples >= 2 ** 12, "must be at least 2^12"),
        ("moll_base", cfg.moll_base in ("analytic", "cone"),
         "must be 'analytic' or 'cone'"),
        ("profile_base", cfg.profile_base in ("analytic", "cone"),
         "must be 'analytic' or 'cone'"),
        ("moll_cutoff", cfg.moll_cutoff >= 0, "must be nonnegative"),
        ("profile_cutoff", cfg.profile_cutoff > 0, "must be positive"),
        ("gram_tol", cfg.gram_tol > 0, "must be positive"),
        ("dyadic_tol", cfg.dyadic_tol > 0, "must be positive"),
        ("r2_min", 0.0 < cfg.r2_min <= 1.0, "must lie in (0, 1]"),
        ("env_floor", cfg.env_floor > 0, "must be positive"),
        ("audit_n_max", 0 <= cfg.audit_n_max <= 12, "must lie in [0, 12]"),
        ("mixed_s", 0.0 < cfg.mixed_s <= 1.0, "must lie in (0, 1]"),
        ("mixed_tau", cfg.mixed_tau > 0, "must be positive"),
        ("mixed_k_max", 0 <= cfg.mixed_k_max <= 10, "must lie in [0, 10]"),
        ("mixed_q_max", 0 <= cfg.mixed_q_max <= 10, "must lie in [0, 10]"),
        ("points", cfg.points >= 2, "must be at least 2"),
        ("kpoints", cfg.kpoints >= 20, "must be at least 20"),
        ("fit_points", cfg.fit_points >= 30, "must be at least 30"),
        ("tau", cfg.tau > 0, "must be positive"),
        ("xmin", cfg.xmin >= 0, "must be nonnegative"),
        ("xmax", cfg.xmax > cfg.xmin, "must exceed xmin"),
        ("kmin", cfg.kmin >= 1e2, "must be at least 1e2"),
        ("kmax", 1e14 >= cfg.kmax > cfg.kmin, "must lie in (kmin, 1e14]"),
        ("fit_xmax", cfg.fit_xmax > cfg.fit_xmin > 0, "must exceed fit_xmin > 0"),
        ("psi_xmax", cfg.psi_xmax > 0, "must be positive"),
    ]
    for name, ok, msg in checks:
        if not ok:
            raise InputError(f"config field '{name}': {msg}; got {getattr(cfg, name)}")


# ---------------------------------------------------------------------------
# Deterministic artifact writing
# ---------------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    h.update(path.read_bytes())
    return h.hexdigest()


def write_json(path: Path, obj) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o)}")


# ---------------------------------------------------------------------------
# Stages
# ---------------------------------------------------------------------------

def stage_lambert_table(cfg: RunConfig, out: Path) -> Path:
    if cfg.log:
        if cfg.xmin <= 0:
            raise InputError("config field 'xmin': log spacing needs xmin > 0")
        xs = np.logspace(math.log10(cfg.xmin), math.log10(cfg.xmax), cfg.points)
    else:
        xs = np.linspace(cfg.xmin, cfg.xmax, cfg.points)
    w = lambert_w0(xs, WEvalConfig())
    resid = np.abs(w * np.exp(w) - xs) / np.maximum(1.0, xs)
    lo = np.full_like(xs, np.nan)
    hi = np.full_like(xs, np.nan)
    mask = xs >= np.e
    if np.any(mask):
        rep = w_bounds_check(xs[mask])
        lo[mask] = rep.lower
        hi[mask] = rep.upper
    path = out / "lambert_table.csv"
    write_csv(
        path,
        ["x", "w", "residual", "lower_bound", "upper_bound"],
        zip(xs, w, resid, lo, hi),
    )
    return path


def stage_assoc_func(cfg: RunConfig, out: Path) -> Path:
    params = SequenceParams(cfg.tau, cfg.sigma)
    ks = np.logspace(math.log10(cfg.kmin), math.log10(cfg.kmax), cfg.kpoints)
    rows = []
    for k in ks:
        rep = assoc_t_exact(float(k), params)
        rows.append((rep.k, rep.t_exact, rep.argmax_p, rep.t_asym, rep.ratio))
    path = out / "assoc_func.csv"
    write_csv(path, ["k", "t_exact", "argmax_p", "t_asym", "ratio"], rows)
    return path


def stage_build_mollifier(cfg: RunConfig, out: Path, report: dict) -> list:
    spec = GridSpec.symmetric(1.5, cfg.grid_pow)
    cutoff = cfg.moll_cutoff if cfg.moll_cutoff > 0 else spec.dx
    build = build_mollifier(
        cfg.sigma,
        spec,
        cutoff=cutoff,
        base=cfg.moll_base,
        base_width=cfg.moll_base_width,
        m_max=cfg.m_max,
    )
    phi_path = out / cfg.moll_out
    write_csv(phi_path, ["x", "phi"], zip(build.phi.x(), build.phi.values))
    n_audit = min(cfg.audit_n_max, len(build.scales) - 2)
    audit = derivative_bound_audit(build, n_audit) if n_audit >= 1 else None
    prov = {
        "sigma": cfg.sigma,
        "thresholds": build.thresholds,
        "scales": build.scales,
        "trunc_index": build.trunc_index,
        "base_kind": build.base_kind,
        "base_norm_c": build.base_norm_c,
        "base_sup": build.base_sup,
        "mass": build.phi.integral(),
        "evenness": build.evenness,
        "mass_drift": build.mass_drift,
        "final_gap": build.final_gap,
        "discarded_tail_mass": build.discarded_tail_mass,
        "degenerate": build.degenerate,
        "bounds_table": [
            {"n": r.n, "measured": r.measured, "bound": r.bound, "ratio": r.ratio}
            for r in (audit.rows if audit else [])
        ],
        "tau_eff": audit.tau_eff if audit else None,
        "log_c_fit": audit.log_c_fit if audit else None,
    }
    prov_path = out / (Path(cfg.moll_out).stem + ".provenance.json")
    write_json(prov_path, prov)
    report["mollifier"] = {
        "mass": build.phi.integral(),
        "evenness": build.evenness,
        "trunc_index": build.trunc_index,
        "audit_n_max": n_audit,
        "audit_pass": audit is not None,
    }
    return [phi_path, prov_path]


def _build(cfg: RunConfig):
    return build_wavelet(
        sigma=cfg.sigma,
        a=cfg.a,
        grid_pow=cfg.grid_pow,
        freq_pow=cfg.freq_pow,
        profile_cutoff=cfg.profile_cutoff,
        base=cfg.profile_base,
        base_width=cfg.profile_base_width,
        L=cfg.period,
        N=cfg.samples,
    )


def stage_wavelet_artifacts(cfg: RunConfig, wb, out: Path, report: dict) -> list:
    xi = wb.ph.xi()
    ph_path = out / "psi_hat.csv"
    write_csv(
        ph_path, ["xi", "re", "im"], zip(xi, wb.ph.values.real, wb.ph.values.imag)
    )
    grid = wb.synthesis.grid
    x = grid.x()
    keep = np.abs(x) <= cfg.psi_xmax
    psi_path = out / "psi.csv"
    write_csv(psi_path, ["x", "psi"], zip(x[keep], grid.values[keep]))
    man = {
        "sigma": wb.sigma,
        "a": wb.a,
        "freq_grid": {"xi0": wb.ph.xi0, "dxi": wb.ph.dxi, "n": wb.ph.n},
        "lattice": {"period": wb.L, "samples": wb.N, "dx": wb.L / wb.N},
        "support": [wb.ph.support[0], wb.ph.support[1]],
        "l2_norm": wb.synthesis.l2_norm,
        "imag_max": wb.synthesis.imag_max,
        "periodization_diff": wb.synthesis.periodization_diff,
        "profile_scales": wb.master.scales,
        "profile_degenerate": wb.master.degenerate,
        "psi_csv_xmax": cfg.psi_xmax,
    }
    man_path = out / "wavelet_manifest.json"
    write_json(man_path, man)
    report["wavelet"] = {
        "l2_norm": wb.synthesis.l2_norm,
        "imag_max": wb.synthesis.imag_max,
        "periodization_diff": wb.synthesis.periodization_diff,
    }
    return [ph_path, psi_path, man_path]


def stage_verify_onw(cfg: RunConfig, wb, out: Path, report: dict) -> list:
    gram = gram_matrix(
        wb.ph,
        m_range=(-cfg.gram_m, cfg.gram_m),
        n_range=(-cfg.gram_n, cfg.gram_n),
        tol=cfg.gram_tol,
    )
    gram_path = out / "gram.csv"
    write_csv(
        gram_path,
        ["m1", "n1", "m2", "n2", "re", "im"],
        (
            (i1[0], i1[1], i2[0], i2[1], v.real, v.imag)
            for i1, i2, v in gram.entries
        ),
    )
    dy = dyadic_sum_check(wb.ph, m_window=cfg.dyadic_window, tol=cfg.dyadic_tol)
    dy_path = out / "dyadic.csv"
    write_csv(dy_path, ["xi", "s"], zip(dy.xi, dy.s))
    comp = completeness_check(wb.ph, target_tol=cfg.completeness_tol)
    report["verify_onw"] = {
        "max_offdiag": gram.max_offdiag,
        "max_diag_dev": gram.max_diag_dev,
        "dyadic_max_dev": dy.max_dev,
        "completeness_ratio": comp.ratio,
        "completeness_status": comp.status,
        "completeness_windows": {str(k): v for k, v in comp.n_used.items()},
    }
    return [gram_path, dy_path]


def stage_decay_fit(cfg: RunConfig, wb, out: Path, report: dict) -> list:
    xg = np.logspace(math.log10(cfg.fit_xmin), math.log10(cfg.fit_xmax), cfg.fit_points)
    ev = wb.ph.source
    table = decay_envelope(
        wb.synthesis.grid, xg, floor=cfg.env_floor, evaluator=ev
    )
    fit = fit_decay(table, cfg.sigma, comparators=True, r2_min=cfg.r2_min)
    env_path = out / "envelope.csv"
    write_csv(env_path, fit.comparator_columns, fit.comparator_table)
    rows = [
        derivative_decay_check(
            wb.ph, 0, xg, cfg.period, cfg.samples, table.window, cfg.sigma,
            floor=cfg.env_floor, r2_min=cfg.r2_min, lattice=wb.synthesis.grid,
        )
    ]
    for n in _parse_orders(cfg.deriv_orders):
        rows.append(
            derivative_decay_check(
                wb.ph, n, xg, cfg.period, cfg.samples, table.window, cfg.sigma,
                floor=cfg.env_floor, r2_min=cfg.r2_min,
            )
        )
    growth = intercept_growth_fit(rows)
    report["decay_fit"] = {
        "h_fit": fit.h_fit,
        "h_stderr": fit.h_stderr,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "x_range": list(fit.x_range),
        "shape_checks": fit.shape_checks,
        "crossovers": fit.crossovers,
        "window": table.window,
        "dropped_points": table.dropped,
        "derivatives": [
            {"n": r.n, "h_fit": r.h_fit, "intercept": r.intercept,
             "r_squared": r.r_squared, "sup": r.sup}
            for r in rows
        ],
        "intercept_growth": {
            "log_c_ls": growth.log_c_ls,
            "s_ls": growth.s_ls,
            "log_c_at_s1": growth.log_c_at_s1,
            "feasible": growth.feasible,
        },
    }
    if not growth.feasible:
        raise VerificationError(
            f"intercept growth fit infeasible: s = {growth.s_ls:.4f}"
        )
    return [env_path]


def stage_mixed_audit(cfg: RunConfig, wb, out: Path, report: dict) -> list:
    rep = mixed_bound_audit(
        wb.ph,
        k_max=cfg.mixed_k_max,
        q_max=cfg.mixed_q_max,
        s=cfg.mixed_s,
        tau=cfg.mixed_tau,
        sigma=cfg.sigma,
        L=cfg.period,
        N=cfg.samples,
    )
    path = out / "mixed.csv"
    rows = [
        (k, q, rep.sup_table[k, q])
        for k in range(cfg.mixed_k_max + 1)
        for q in range(cfg.mixed_q_max + 1)
    ]
    write_csv(path, ["k", "q", "sup"], rows)
    report["mixed_audit"] = {
        "feasible": rep.feasible,
        "log_c": rep.log_c,
        "log_a": rep.log_a,
        "log_b": rep.log_b,
        "s": rep.s,
        "tau": rep.tau,
    }
    return [path]


def _parse_orders(spec: str) -> list:
    try:
        orders = [int(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError as exc:
        raise InputError(f"config field 'deriv_orders': {spec!r} is not a comma list") from exc
    if any(n < 1 or n > 12 for n in orders):
        raise InputError("config field 'deriv_orders': orders must lie in [1, 12]")
    return orders


# ---------------------------------------------------------------------------
# Orchestration
# ---------------------------------------------------------------------------

STAGES_BY_COMMAND = {
    "lambert-table": ("lambert",),
    "assoc-func": ("assoc",),
    "build-mollifier": ("mollifier",),
    "build-wavelet": ("wavelet",),
    "verify-onw": ("wavelet", "verify"),
    "decay-fit": ("wavelet", "decay"),
    "mixed-audit": ("wavelet", "mixed"),
    "all": ("lambert", "assoc", "mollifier", "wavelet", "verify", "decay", "mixed"),
}


def run_pipeline(command: str, cfg: RunConfig) -> dict:
    """Execute the stages of one subcommand; returns the manifest."""
    _validate(cfg)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stages = STAGES_BY_COMMAND[command]
    artifacts: list = []
    timings: dict = {}
    report: dict = {}
    wb = None

    def timed(name, fn, *args):
        t0 = time.perf_counter()
        res = fn(*args)
        timings[name] = time.perf_counter() - t0
        return res

    failing = None
    current_stage = None
    try:
        if "lambert" in stages:
            current_stage = "lambert_table"
            artifacts.append(timed("lambert_table", stage_lambert_table, cfg, out))
        if "assoc" in stages:
            current_stage = "assoc_func"
            artifacts.append(timed("assoc_func", stage_assoc_func, cfg, out))
        if "mollifier" in stages:
            current_stage = "build_mollifier"
            artifacts.extend(timed("build_mollifier", stage_build_mollifier, cfg, out, report))
        if "wavelet" in stages:
            current_stage = "build_wavelet"
            wb = timed("build_wavelet", _build, cfg)
            artifacts.extend(stage_wavelet_artifacts(cfg, wb, out, report))
        if "verify" in stages:
            current_stage = "verify_onw"
            artifacts.extend(timed("verify_onw", stage_verify_onw, cfg, wb, out, report))
        if "decay" in stages:
            current_stage = "decay_fit"
            artifacts.extend(timed("decay_fit", stage_decay_fit, cfg, wb, out, report))
        if "mixed" in stages:
            current_stage = "mixed_audit"
            artifacts.extend(timed("mixed_audit", stage_mixed_audit, cfg, wb, out, report))
    except VerificationError as exc:
        failing = {"stage": current_stage, "assertion": str(exc)}

    report_path = out / "report.json"
    write_json(
        report_path,
        {
            "command": command,
            "assertions": report,
            "status": "pass" if failing is None else "fail",
            "failing": failing,
            "versions": {
                "lambertwave": __version__,
                "numpy": np.__version__,
                "scipy": scipy.__version__,
                "python": sys.version.split()[0],
            },
            "grids": {
                "grid_pow": cfg.grid_pow,
                "freq_pow": cfg.freq_pow,
                "period": cfg.period,
                "samples": cfg.samples,
            },
        },
    )
    artifacts.append(report_path)

    manifest = {
        "command": command,
        "config": dataclasses.asdict(cfg),
        "artifacts": {p.name: _sha256(p) for p in artifacts},
        "timings": timings,
        "failing": failing,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }
    write_json(out / "manifest.json", manifest)
    if failing is not None:
        raise VerificationError(
            f"{failing['stage']}: {failing['assertion']}", detail=failing
        )
    return manifest


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(RunConfig)}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file of config key/value pairs")
    p.add_argument("--out-dir", dest="out_dir", help="output directory")


def _arg(p, name, **kw):
    p.add_argument(f"--{name.replace('_', '-')}", dest=name, **kw)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lambertwave",
        description="Band-limited wavelets with Lambert-form decay: build and certify.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lambert-table", help="table of W values, residuals, bounds")
    for nm in ("xmin", "xmax"):
        _arg(p, nm, type=float)
    _arg(p, "points", type=int)
    p.add_argument("--log", dest="log", action="store_true", default=None)
    p.add_argument("--linear", dest="log", action="store_false", default=None)
    _add_common(p)

    p = sub.add_parser("assoc-func", help="associated function exact/asymptotic table")
    for nm in ("tau", "sigma", "kmin", "kmax"):
        _arg(p, nm, type=float)
    _arg(p, "kpoints", type=int)
    p.add_argument("--points", dest="kpoints", type=int, help="alias for --kpoints")
    _add_common(p)

    p = sub.add_parser("build-mollifier", help="convolution-cascade cutoff + provenance")
    _arg(p, "sigma", type=float)
    _arg(p, "grid_pow", type=int)
    p.add_argument("--cutoff", dest="moll_cutoff", type=float)
    p.add_argument("--base", dest="moll_base")
    p.add_argument("--out", dest="moll_out", help="cutoff CSV filename")
    _add_common(p)

    p = sub.add_parser("build-wavelet", help="bell, transform, and lattice synthesis")
    for nm in ("sigma", "a", "profile_cutoff", "psi_xmax", "period"):
        _arg(p, nm, type=float)
    for nm in ("grid_pow", "freq_pow", "samples"):
        _arg(p, nm, type=int)
    _add_common(p)

    p = sub.add_parser("verify-onw", help="Gram matrix, dyadic sum, completeness")
    for nm in ("sigma", "a", "gram_tol", "dyadic_tol", "completeness_tol", "period"):
        _arg(p, nm, type=float)
    for nm in ("gram_m", "gram_n", "dyadic_window", "grid_pow", "freq_pow", "samples"):
        _arg(p, nm, type=int)
    _add_common(p)

    p = sub.add_parser("decay-fit", help="envelope extraction and Lambert-form regression")
    for nm in ("sigma", "a", "fit_xmin", "fit_xmax", "env_floor", "r2_min", "period"):
        _arg(p, nm, type=float)
    for nm in ("fit_points", "grid_pow", "freq_pow", "samples"):
        _arg(p, nm, type=int)
    _arg(p, "deriv_orders", type=str)
    _add_common(p)

    p = sub.add_parser("mixed-audit", help="moment-derivative bound feasibility")
    for nm in ("sigma", "a", "mixed_s", "mixed_tau", "period"):
        _arg(p, nm, type=float)
    for nm in ("mixed_k_max", "mixed_q_max", "grid_pow", "freq_pow", "samples"):
        _arg(p, nm, type=int)
    _add_common(p)

    p = sub.add_parser("all", help="run every stage")
    for nm in ("sigma", "a"):
        _arg(p, nm, type=float)
    for nm in ("grid_pow", "freq_pow"):
        _arg(p, nm, type=int)
    _arg(p, "samples", type=int)
    _arg(p, "period", type=float)
    _add_common(p)

    return ap


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = dataclasses.asdict(RunConfig())
    cfg_path = getattr(args, "config", None)
    if cfg_path:
        try:
            loaded = json.loads(Path(cfg_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"config file {cfg_path}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise InputError(f"config file {cfg_path}: expected a JSON object")
        for key, val in loaded.items():
            if key not in values:
                raise InputError(f"config file {cfg_path}: unknown key '{key}'")
            values[key] = val
    for key in values:
        arg_val = getattr(args, key, None)
        if arg_val is not None:
            values[key] = arg_val
    if not values["out_dir"]:
        values["out_dir"] = os.environ.get(ENV_OUT_DIR, "lambertwave-out")
    return RunConfig(**values)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = resolve_config(args)
        run_pipeline(args.command, cfg)
    except (InputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResolutionError, ConvergenceError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except LambertwaveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
