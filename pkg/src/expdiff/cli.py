"""Configuration-driven command line front end.

Subcommands: weight-check, inequalities, simulate, sweep.  Every command
reads a flat INI config (sections below), writes CSV files with a
17-significant-digit float format into --out, and prints a one-line
verdict per check.  Identical config + seed produces byte-identical
output files.

Config sections (keys shown with defaults where sensible)::

    [weight]            kind = power | zygmund | custom | unweighted
                        alpha = 0.5            (power, zygmund)
                        beta = 1.0  c = 2.0    (zygmund)
                        g_expr = ...  g_prime_expr = ...   (custom, in s)
                        alpha1 = ...  alpha2 = ...         (custom)
    [equation]          dim_n = 3   p = 2.0   m = 2.0
    [grid]              r_max = 40  n_cells = 800
    [simulate]          t_end = 1e6   bump_radius = 1   bump_height = 1
                        n_outputs = 97   output_decades = 8
                        cfl_safety = 0.4  support_threshold_rel = 1e-12
                        normalize = false
    [weight_check]      s_min = 1e-3  s_max = 1e3  n_samples = 200
                        tau_grid = 1e2, 1e4, 1e6, 1e8
    [inequalities]      kinds = poincare, radial_sobolev, bounded_sobolev
                        q = 3.0   radii = 1, 2, 4   n_random = 4
    [sweep]             alphas = 0.4, 0.5, 0.7
                        ps = 2.0   ms = 2.0
"""

from __future__ import annotations

import argparse
import configparser
import csv
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import envelopes as env_mod
from . import inequalities as ineq
from . import solver
from . import weights
from .errors import ExpdiffError, FitRefusedError, InvalidParameterError

FLOAT_FMT = ".17g"

_EXPR_NAMES = {
    "exp": np.exp, "log": np.log, "sqrt": np.sqrt, "sin": np.sin,
    "cos": np.cos, "tanh": np.tanh, "abs": np.abs, "power": np.power,
    "pi": math.pi, "e": math.e,
}


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "PASS" if x else "FAIL"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), FLOAT_FMT)
    return str(x)


def write_csv(path: Path, header: list[str], rows: list, meta: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for key in sorted(meta):
            fh.write(f"# {key}={meta[key]}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.replace(",", " ").split()]


def _compile_expr(expr: str):
    code = compile(expr, "<config>", "eval")

    def fn(s):
        return eval(code, {"__builtins__": {}}, dict(_EXPR_NAMES, s=s))

    return fn


def build_weight(cfg: configparser.ConfigParser) -> weights.WeightSpec:
    sec = cfg["weight"]
    kind = sec.get("kind", "power").strip().lower()
    if kind == "power":
        return weights.make_power_weight(sec.getfloat("alpha"))
    if kind == "zygmund":
        return weights.make_zygmund_weight(
            sec.getfloat("alpha"), sec.getfloat("beta"), sec.getfloat("c"))
    if kind == "custom":
        return weights.make_custom_weight(
            _compile_expr(sec.get("g_expr")),
            _compile_expr(sec.get("g_prime_expr")),
            sec.getfloat("alpha1"), sec.getfloat("alpha2"))
    if kind == "unweighted":
        return weights.make_unweighted()
    raise InvalidParameterError(f"unknown weight kind {kind!r}")


def build_equation(cfg: configparser.ConfigParser) -> weights.EquationParams:
    sec = cfg["equation"]
    return weights.EquationParams(
        dim_n=sec.getint("dim_n"), p=sec.getfloat("p"), m=sec.getfloat("m"))


def _load_config(path: str) -> configparser.ConfigParser:
    cfg = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = cfg.read(path)
    if not read:
        raise InvalidParameterError(f"config file {path} not found")
    return cfg


# ---------------------------------------------------------------------------
# weight-check


def cmd_weight_check(cfg, out: Path, seed: int, allow_unweighted: bool) -> int:
    w = build_weight(cfg)
    if not w.is_weighted:
        raise InvalidParameterError(
            "weight-check applies to growing weights; the unweighted mode has "
            "no envelope to validate"
        )
    eq = build_equation(cfg)
    eq.validate_with_weight(w)
    sec = cfg["weight_check"] if cfg.has_section("weight_check") else {}
    s_min = float(sec.get("s_min", 1e-3))
    s_max = float(sec.get("s_max", 1e3))
    n = int(sec.get("n_samples", 200))
    samples = np.geomspace(s_min, s_max, n)
    rng = np.random.default_rng(seed)

    rows = []
    gated_failures = 0

    def record(report, gate_ok=True, gate_name=""):
        nonlocal gated_failures
        rows.append((report.name, "PASS" if report.passed else "FAIL",
                     report.worst_violation, report.tolerance,
                     gate_name if not gate_ok else ""))
        if gate_ok and not report.passed:
            gated_failures += 1

    def attempt(name, fn, gate_ok=True, gate_name=""):
        nonlocal gated_failures
        try:
            record(fn(), gate_ok=gate_ok, gate_name=gate_name)
        except ExpdiffError as exc:
            rows.append((name, "FAIL", "", "", f"error: {exc}"))
            if gate_ok:
                gated_failures += 1

    record(weights.validate_envelope(w, samples))
    attempt("primitive sandwich", lambda: weights.check_sandwich(w, samples))
    attempt("lam bounds", lambda: weights.check_lambda_bounds(w, samples))
    zs = np.exp(rng.uniform(math.log(1e-2), math.log(1e3), size=40))
    attempt("inversion round trip",
            lambda: weights.check_inversion_roundtrip(w, zs))
    pairs = [(float(z), float(lam)) for z, lam in zip(
        np.exp(rng.uniform(math.log(1e-2), math.log(1e2), size=40)),
        np.concatenate([np.exp(rng.uniform(0.0, math.log(100.0), size=20)),
                        np.exp(rng.uniform(math.log(0.01), 0.0, size=20))]))]
    attempt("inverse scaling", lambda: weights.check_inverse_scaling(w, pairs))

    cond = weights.check_structural_conditions(w, eq)
    gate = cond.flux_monotone_ok and cond.dual_monotone_ok
    attempt("monotone radial quantities",
            lambda: weights.check_monotone_quantities(w, eq, samples),
            gate_ok=gate, gate_name="structural conditions not satisfied")
    for name, ok in (("flux monotonicity condition", cond.flux_monotone_ok),
                     ("dual monotonicity condition", cond.dual_monotone_ok),
                     ("sup-decay alpha range", cond.sup_decay_range_ok),
                     ("alpha2 < 1", cond.alpha2_below_one),
                     ("alpha2 < min(N, p/(p-1))", cond.alpha2_below_cap)):
        rows.append((name, "TRUE" if ok else "FALSE", "", "", "informational"))

    meta = {"seed": seed, "weight": w.label(), "dim_n": eq.dim_n,
            "p": _fmt(eq.p), "m": _fmt(eq.m)}
    write_csv(out / "weight_check.csv",
              ["check", "verdict", "worst_violation", "tolerance", "note"],
              rows, meta)

    if w.kind == weights.KIND_ZYGMUND:
        taus = _floats(str(sec.get("tau_grid", "1e2 1e4 1e6 1e8")))
        table = weights.zygmund_inverse_asymptotics(
            w.params["alpha"], w.params["beta"], w.params["c"], taus)
        write_csv(out / "zygmund_asymptotics.csv", ["tau", "A"],
                  table, meta)

    for row in rows:
        print(f"{row[1]:>5}  {row[0]}")
    return 0 if gated_failures == 0 else 1


# ---------------------------------------------------------------------------
# inequalities


def cmd_inequalities(cfg, out: Path, seed: int, allow_unweighted: bool) -> int:
    w = build_weight(cfg)
    eq = build_equation(cfg)
    eq.validate_with_weight(w)
    sec = cfg["inequalities"] if cfg.has_section("inequalities") else {}
    kinds = [k.strip() for k in str(sec.get(
        "kinds", "poincare, radial_sobolev, bounded_sobolev")).split(",") if k.strip()]
    q = float(sec.get("q", 3.0))
    radii = _floats(str(sec.get("radii", "1 2 4")))
    n_random = int(sec.get("n_random", 4))
    rng = np.random.default_rng(seed)

    rows = []
    all_pass = True
    for kind in kinds:
        if kind in (ineq.POINCARE, ineq.RADIAL_SOBOLEV):
            family = ineq.bump_family() + ineq.random_family(rng, n_random)
            rep = ineq.verify_inequality(kind, w, eq,
                                         q=q if kind == ineq.RADIAL_SOBOLEV else None,
                                         family=family)
            reports = [rep]
        elif kind == ineq.BOUNDED_SOBOLEV:
            reports = []
            for big_r in radii:
                family = (ineq.bump_family(radii=(big_r / 4, big_r / 2, big_r),
                                           powers=(1.0, 2.0, 3.0))
                          + ineq.random_family(rng, n_random, fixed_radius=big_r))
                reports.append(ineq.verify_inequality(kind, w, eq, q=q,
                                                      big_r=big_r, family=family))
        else:
            raise InvalidParameterError(f"unknown inequality kind {kind!r}")
        for rep in reports:
            all_pass &= rep.verdict
            for label, lhs, rhs, ratio in rep.per_function:
                rows.append((rep.kind, rep.params["weight"], eq.dim_n, eq.p,
                             rep.params["q"], rep.params.get("R") or "",
                             label, lhs, rhs, ratio, rep.certified_constant,
                             rep.beta_sup, rep.closed_form_bound, rep.kqp,
                             rep.verdict))
            print(f"{'PASS' if rep.verdict else 'FAIL':>5}  {rep.kind}"
                  f"  worst_ratio={rep.empirical_worst_ratio:.6g}"
                  f"  certified={rep.certified_constant:.6g}")

    meta = {"seed": seed, "weight": w.label(), "dim_n": eq.dim_n,
            "p": _fmt(eq.p), "m": _fmt(eq.m)}
    write_csv(out / "inequalities.csv",
              ["kind", "weight", "N", "p", "q", "R", "function", "lhs", "rhs",
               "ratio", "certified", "beta_sup", "closed_form_bound", "kqp",
               "verdict"],
              rows, meta)
    return 0 if all_pass else 1


# ---------------------------------------------------------------------------
# simulate


def _solver_config(cfg, allow_unweighted: bool,
                   override: dict | None = None) -> solver.SolverConfig:
    w = build_weight(cfg)
    eq = build_equation(cfg)
    if override:
        if "alpha" in override:
            w = weights.make_power_weight(override["alpha"])
        eq = weights.EquationParams(dim_n=eq.dim_n,
                                    p=override.get("p", eq.p),
                                    m=override.get("m", eq.m))
    grid = cfg["grid"]
    sim = cfg["simulate"]
    t_end = override.get("t_end") if override else None
    if t_end is None:
        t_end = sim.getfloat("t_end")
    n_outputs = sim.getint("n_outputs", fallback=97)
    decades = sim.getfloat("output_decades", fallback=8.0)
    outs = solver.default_output_times(t_end, n=n_outputs, decades=decades)
    return solver.SolverConfig(
        eq=eq, weight=w,
        r_max=grid.getfloat("r_max"), n_cells=grid.getint("n_cells"),
        t_end=t_end, output_times=outs,
        bump_radius=sim.getfloat("bump_radius", fallback=1.0),
        bump_height=sim.getfloat("bump_height", fallback=1.0),
        support_threshold_rel=sim.getfloat("support_threshold_rel", fallback=1e-12),
        cfl_safety=sim.getfloat("cfl_safety", fallback=0.4),
        regularization_eps=sim.getfloat("regularization_eps", fallback=0.0),
        normalize=sim.getboolean("normalize", fallback=False),
        allow_unweighted=allow_unweighted,
    )


def _barenblatt_exponent(eq: weights.EquationParams) -> float:
    """Self-similar sup decay exponent of the unweighted doubly nonlinear
    equation: -N / (N(p+m-3) + p)."""
    n = eq.dim_n
    return -n / (n * eq.kappa + eq.p)


def _fit_rows(traj: solver.Trajectory, scfg: solver.SolverConfig) -> list:
    rows = []
    if scfg.weight.is_weighted:
        for model in (solver.SUPPORT_ENVELOPE, solver.SUP_ENVELOPE):
            try:
                rep = solver.fit_rates(traj, model, scfg.weight, scfg.eq)
                rows.append((model, rep.slope, rep.target_slope, rep.c_fit,
                             rep.band_max, rep.band_min,
                             rep.window[0], rep.window[1], rep.n_points, "ok"))
            except FitRefusedError as exc:
                rows.append((model, "", "", "", "", "", "", "", 0, str(exc)))
    else:
        t = traj.times[1:]
        keep = t >= t[-1] / 10.0
        slope = float(np.polyfit(np.log(t[keep]), np.log(traj.sup_u[1:][keep]), 1)[0])
        rows.append(("sup_power_law", slope, _barenblatt_exponent(scfg.eq),
                     "", "", "", t[keep][0], t[-1], int(keep.sum()), "ok"))
    return rows


def _envelope_rows(traj: solver.Trajectory, scfg: solver.SolverConfig) -> list:
    rows = []
    if not scfg.weight.is_weighted:
        return rows
    par = env_mod.EnvelopeParams(eq=scfg.eq, weight=scfg.weight, mass0=traj.mass0)
    for k in range(1, traj.times.size):
        t = float(traj.times[k])
        try:
            se = env_mod.sup_envelope(par, t)
            sup_ratio = traj.sup_u[k] / se
        except ExpdiffError:
            se, sup_ratio = math.nan, math.nan
        re = env_mod.support_envelope(par, t)
        rows.append((t, traj.sup_u[k], se, sup_ratio,
                     traj.support_radius[k], re,
                     traj.support_radius[k] / re if re > 0 else math.nan))
    return rows


def cmd_simulate(cfg, out: Path, seed: int, allow_unweighted: bool) -> int:
    scfg = _solver_config(cfg, allow_unweighted)
    traj = solver.run(scfg)
    meta = {"seed": seed, "weight": scfg.weight.label(), "dim_n": scfg.eq.dim_n,
            "p": _fmt(scfg.eq.p), "m": _fmt(scfg.eq.m),
            "mass0": _fmt(traj.mass0), "n_cells": scfg.n_cells,
            "r_max": _fmt(scfg.r_max)}
    write_csv(out / "trajectory.csv", list(solver.Trajectory.COLUMNS),
              traj.rows(), meta)
    write_csv(out / "envelope_comparison.csv",
              ["t", "sup_u", "sup_envelope", "sup_ratio",
               "support_radius", "support_envelope", "support_ratio"],
              _envelope_rows(traj, scfg), meta)
    fit_rows = _fit_rows(traj, scfg)
    write_csv(out / "fit_summary.csv",
              ["model", "slope", "target_slope", "c_fit", "band_max",
               "band_min", "window_lo", "window_hi", "n_points", "status"],
              fit_rows, meta)
    print(f"simulated to t={traj.times[-1]:g}: mass drift "
          f"{abs(traj.mass[-1] / traj.mass0 - 1.0):.3e}, "
          f"sup={traj.sup_u[-1]:.6g}, support={traj.support_radius[-1]:g}")
    for row in fit_rows:
        print(f"  fit {row[0]}: slope={row[1]} target={row[2]} ({row[-1]})")
    return 0


# ---------------------------------------------------------------------------
# sweep


def _sweep_one(args):
    cfg_path, alpha, p, m, t_end, allow_unweighted = args
    cfg = _load_config(cfg_path)
    scfg = _solver_config(cfg, allow_unweighted,
                          override={"alpha": alpha, "p": p, "m": m,
                                    "t_end": t_end})
    traj = solver.run(scfg)
    rep = solver.fit_rates(traj, solver.SUPPORT_ENVELOPE, scfg.weight, scfg.eq)
    sup_rep = solver.fit_rates(traj, solver.SUP_ENVELOPE, scfg.weight, scfg.eq)
    return (alpha, p, m, traj.mass0, rep.slope, rep.target_slope,
            abs(rep.slope - rep.target_slope) / abs(rep.target_slope),
            rep.c_fit, sup_rep.band_max / sup_rep.band_min)


def cmd_sweep(cfg, out: Path, seed: int, allow_unweighted: bool,
              jobs: int, cfg_path: str) -> int:
    sec = cfg["sweep"]
    alphas = _floats(sec.get("alphas", "0.5"))
    ps = _floats(sec.get("ps", "2.0"))
    ms = _floats(sec.get("ms", "2.0"))
    # optional per-alpha end times: the asymptotic window opens later for
    # weaker weights, so each alpha may carry its own horizon
    t_ends = _floats(sec.get("t_ends", "")) or [None] * len(alphas)
    if len(t_ends) != len(alphas):
        raise InvalidParameterError("t_ends must match alphas in length")
    tasks = [(cfg_path, a, p, m, te, allow_unweighted)
             for a, te in zip(alphas, t_ends) for p in ps for m in ms]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_one, tasks))
    else:
        results = [_sweep_one(t) for t in tasks]
    meta = {"seed": seed, "jobs_invariant": "aggregation ordered by config"}
    write_csv(out / "sweep.csv",
              ["alpha", "p", "m", "mass0", "support_slope", "target_slope",
               "slope_rel_err", "c_fit", "sup_band_ratio"],
              results, meta)
    for row in results:
        print(f"alpha={row[0]:g} p={row[1]:g} m={row[2]:g}: "
              f"slope={row[4]:.4f} target={row[5]:.4f} rel_err={row[6]:.3f}")
    return 0


# ---------------------------------------------------------------------------


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="expdiff",
        description="Numerical laboratory for exponentially weighted "
                    "degenerate diffusion")
    parser.add_argument("command",
                        choices=["weight-check", "inequalities", "simulate", "sweep"])
    parser.add_argument("--config", required=True, help="INI config path")
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--allow-unweighted", action="store_true",
                        help="permit the g = 0 calibration mode")
    args = parser.parse_args(argv)
    out = Path(args.out)
    try:
        cfg = _load_config(args.config)
        if args.command == "weight-check":
            return cmd_weight_check(cfg, out, args.seed, args.allow_unweighted)
        if args.command == "inequalities":
            return cmd_inequalities(cfg, out, args.seed, args.allow_unweighted)
        if args.command == "simulate":
            return cmd_simulate(cfg, out, args.seed, args.allow_unweighted)
        return cmd_sweep(cfg, out, args.seed, args.allow_unweighted,
                         args.jobs, args.config)
    except ExpdiffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
