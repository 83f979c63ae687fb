"""Command-line driver: ``mcfrac {solve,converge,table1,fnls,validate}``.

Settings come from built-in defaults, then an optional JSON ``--config``
file, then explicit flags (later sources win).  Exit status is 0 on
success, 1 on a numerical failure and 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import analytic
from .basis import make_bases
from .fnls import FnlsConfig, dt_refinement_study, run_simulation
from .fourier_like import EigenSolverError
from .norms import ConvergenceReport, error_hs, error_l2, error_max, predicted_rate, successive_orders
from .solver import FracOperatorSpec, SingularOperatorError, solve_multiterm
from .special import ConvergenceError
from .transforms import DataError, GridField, from_fourier_like, sample, save_tensor, synthesize
from .validate import run_checks

log = logging.getLogger("mcfrac")

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2
FAMILIES = ("gaussian", "rational", "source")
AUDIT_POINTS = 201          # uniform audit grid on [-10, 10] per axis, capped in d > 1
TABLE1_N = tuple(range(80, 241, 20))

DEFAULTS = {
    "d": 1, "N": 128, "N_list": None, "s": 0.5, "terms": None, "gamma": 1.0, "nu": 2.5,
    "family": "gaussian", "r": 2.3, "T": 1.0, "dt": 0.01, "out": None, "dt_study": False,
    "filter": None, "N_ref": 600, "p": 1,
}


class UsageError(ValueError):
    pass


# --- configuration ------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--config", help="JSON file with settings (flags override it)")
    common.add_argument("--d", type=int, default=S, help="spatial dimension")
    common.add_argument("--N", type=int, default=S, help="modes per dimension is N+1")
    common.add_argument("--N-list", dest="N_list", type=_int_list, default=S, help="ascending N values, e.g. 16,32,64")
    common.add_argument("--N-ref", dest="N_ref", type=int, default=S, help="reference N for given-source runs")
    common.add_argument("--s", type=float, default=S, help="fractional order")
    common.add_argument("--terms", default=S, help='multi-term operator "rho:s,rho:s,..."')
    common.add_argument("--gamma", type=float, default=S, help="shift (solve) or nonlinearity (fnls)")
    common.add_argument("--nu", type=float, default=S, help="map scaling factor")
    common.add_argument("--family", default=S, help="gaussian | rational | source")
    common.add_argument("--r", type=float, default=S, help="decay exponent of the rational family")
    common.add_argument("--T", type=float, default=S, help="final time")
    common.add_argument("--dt", type=float, default=S, help="time step")
    common.add_argument("--p", type=int, default=S, help="nonlinearity exponent")
    common.add_argument("--out", default=S, help="output file or directory")
    common.add_argument("--dt-study", dest="dt_study", action="store_true", default=S,
                        help="also run a time-step refinement study")
    common.add_argument("--filter", default=S, help="only run validation groups matching this text")
    common.add_argument("-v", "--verbose", action="store_true", default=False)

    parser = argparse.ArgumentParser(prog="mcfrac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="solve one problem and report errors")
    sub.add_parser("converge", parents=[common], help="convergence study over --N-list")
    sub.add_parser("table1", parents=[common], help="L2 errors for f=(1+x)exp(-x^2/2) against a reference")
    sub.add_parser("fnls", parents=[common], help="fractional NLS run with TS4")
    sub.add_parser("validate", parents=[common], help="run the oracle checks")
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config", "verbose")}
    if getattr(args, "config", None):
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file {args.config}: {exc}") from exc
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    cfg.update(flags)
    cfg["command"] = args.command
    return cfg


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise UsageError(msg)


def check_config(cfg: dict) -> None:
    cmd = cfg["command"]
    _check(cfg["d"] in (1, 2, 3), f"--d must be 1, 2 or 3, got {cfg['d']}")
    _check(cfg["nu"] > 0, f"--nu must be positive, got {cfg['nu']}")
    if cmd in ("solve", "converge", "table1"):
        _check(cfg["family"] in FAMILIES, f"unknown family {cfg['family']!r}; choose from {', '.join(FAMILIES)}")
        _check(0 < cfg["s"] <= 1, f"--s must lie in (0, 1], got {cfg['s']}")
        _check(cfg["gamma"] >= 0, f"--gamma must be non-negative, got {cfg['gamma']}")
        _check(cfg["r"] > 0, f"--r must be positive, got {cfg['r']}")
        _check(cfg["N"] >= 1, f"--N must be at least 1, got {cfg['N']}")
        if cfg["terms"] is not None:
            try:
                FracOperatorSpec.parse_terms(cfg["terms"], cfg["gamma"])
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
    if cmd == "converge":
        Ns = cfg["N_list"]
        _check(Ns is not None and len(Ns) >= 2, "converge needs --N-list with at least two values")
        _check(all(a < b for a, b in zip(Ns, Ns[1:])), "--N-list must be strictly ascending")
    if cmd == "table1":
        _check(cfg["d"] == 1, "table1 is defined for d = 1 only")
    if cmd == "fnls":
        _check(0 < cfg["s"] <= 1, f"--s must lie in (0, 1], got {cfg['s']}")
        _check(cfg["dt"] > 0 and cfg["T"] >= cfg["dt"], "need dt > 0 and T >= dt")


# --- problem setup --------------------------------------------------------

def operator_spec(cfg: dict) -> FracOperatorSpec:
    if cfg["terms"]:
        return FracOperatorSpec.parse_terms(cfg["terms"], cfg["gamma"])
    return FracOperatorSpec(((1.0, cfg["s"]),), cfg["gamma"])


def make_problem(cfg: dict, spec: FracOperatorSpec):
    d = cfg["d"]
    terms = spec.terms
    if cfg["family"] == "gaussian":
        return analytic.gaussian_problem(cfg["s"], d, spec.gamma, terms)
    if cfg["family"] == "rational":
        return analytic.rational_problem(cfg["s"], cfg["r"], d, spec.gamma, terms)
    return None


def _audit_axes(d: int):
    n = AUDIT_POINTS if d == 1 else (41 if d == 2 else 21)
    return [np.linspace(-10.0, 10.0, n)] * d


def solve_errors(cfg: dict, N: int, spec: FracOperatorSpec, problem):
    """Solve at one N; return (expansion, grid field, errors or None)."""
    bases = make_bases(N, cfg["nu"], cfg["d"])
    rhs = problem.rhs if problem is not None else analytic.table_source
    u = solve_multiterm(rhs, spec, bases)
    grid = synthesize(u)
    if problem is None:
        return u, grid, None
    exact = sample(problem.exact, bases)
    axes = _audit_axes(cfg["d"])
    audit = synthesize(u, axes)
    audit_exact = problem.exact(*np.meshgrid(*axes, indexing="ij", sparse=True))
    s_norm = min(1.0, max(s for _, s in spec.terms))
    errs = {
        "error_max": max(error_max(grid, exact), float(np.max(np.abs(audit - audit_exact)))),
        "error_l2": error_l2(grid, exact, bases),
        "error_hs": error_hs(u, exact, s_norm, bases),
    }
    return u, grid, errs


def _meta(cfg: dict, keys) -> dict:
    return {k: cfg[k] for k in keys}


def _emit(text: str, out) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    sys.stdout.write(text)


# --- subcommands ----------------------------------------------------------

def cmd_solve(cfg: dict) -> int:
    spec = operator_spec(cfg)
    problem = make_problem(cfg, spec)
    u, grid, errs = solve_errors(cfg, cfg["N"], spec, problem)
    meta = _meta(cfg, ("command", "d", "N", "s", "terms", "gamma", "nu", "family", "r"))
    if cfg["out"]:
        out = Path(cfg["out"])
        out.mkdir(parents=True, exist_ok=True)
        save_tensor(u, out / "solution_fourier_like.mcft")
        save_tensor(from_fourier_like(u), out / "solution_mcf.mcft")
        save_tensor(grid, out / "solution_grid.mcft")
    rep = ConvergenceReport(meta=meta)
    if errs is not None:
        rep.add(cfg["N"], errs["error_max"], errs["error_l2"], errs["error_hs"])
        _emit(rep.to_csv(), Path(cfg["out"]) / "errors.csv" if cfg["out"] else None)
    else:
        sys.stdout.write("# " + json.dumps(meta, sort_keys=True) + "\n")
        sys.stdout.write("solution written; no exact solution for family 'source'\n")
    return EXIT_OK


def cmd_converge(cfg: dict) -> int:
    spec = operator_spec(cfg)
    problem = make_problem(cfg, spec)
    if problem is None:
        raise UsageError("converge needs a family with a known exact solution")
    meta = _meta(cfg, ("command", "d", "N_list", "s", "terms", "gamma", "nu", "family", "r"))
    rep = ConvergenceReport(meta=meta)
    for N in cfg["N_list"]:
        _, _, errs = solve_errors(cfg, N, spec, problem)
        rep.add(N, errs["error_max"], errs["error_l2"], errs["error_hs"])
    slopes = rep.slopes()
    pred = None
    if not cfg["terms"]:
        pred = predicted_rate(cfg["family"], cfg["s"], cfg["d"], cfg["r"])
    text = rep.to_csv()
    text += "# fitted orders (last half of N-list): " + json.dumps(
        {k: round(v, 6) for k, v in slopes.items()}, sort_keys=True) + "\n"
    if pred is not None:
        text += f"# predicted H^s order: {pred:.6g}\n"
    _emit(text, cfg["out"])
    return EXIT_OK


def table1_rows(s: float, gamma: float = 1.0, nu: float = 2.5, N_ref: int = 600, Ns=TABLE1_N):
    """(N, L2 error) against a reference solve at N_ref, for f = (1+x)exp(-x^2/2)."""
    spec = FracOperatorSpec(((1.0, s),), gamma)
    ref = from_fourier_like(solve_multiterm(analytic.table_source, spec, make_bases(N_ref, nu, 1)))
    rows = []
    for N in Ns:
        bases = make_bases(N, nu, 1)
        u = synthesize(solve_multiterm(analytic.table_source, spec, bases))
        uref = synthesize(ref, [bases[0].nodes])
        rows.append((N, error_l2(u, GridField(uref, bases))))
    return rows


def cmd_table1(cfg: dict) -> int:
    rows = table1_rows(cfg["s"], cfg["gamma"], cfg["nu"], cfg["N_ref"])
    Ns = [r[0] for r in rows]
    errs = [r[1] for r in rows]
    orders = [math.nan] + list(successive_orders(Ns, errs))
    meta = _meta(cfg, ("command", "s", "gamma", "nu", "N_ref"))
    lines = ["# " + json.dumps(meta, sort_keys=True), "N,error_l2,order"]
    for N, e, o in zip(Ns, errs, orders):
        lines.append(f"{N},{e:.5e}," + ("" if math.isnan(o) else f"{o:.4f}"))
    _emit("\n".join(lines) + "\n", cfg["out"])
    return EXIT_OK


def cmd_fnls(cfg: dict) -> int:
    fc = FnlsConfig(s=cfg["s"], gamma=cfg["gamma"], p=cfg["p"], dt=cfg["dt"], T=cfg["T"],
                    d=cfg["d"], N=cfg["N"], nu=cfg["nu"], snapshot_times=(0.0, cfg["T"] / 2, cfg["T"]))
    out = Path(cfg["out"]) if cfg["out"] else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    res = run_simulation(fc, trace_path=out / "mass.jsonl" if out else None)
    if out:
        for k, (t, vals) in enumerate(res.snapshots):
            save_tensor(GridField(vals, res.state.bases), out / f"snapshot_{k:03d}.mcft")
    summary = {
        "config": _meta(cfg, ("s", "gamma", "p", "dt", "T", "d", "N", "nu")),
        "steps": res.mass_trace[-1]["step"],
        "final_time": res.state.time,
        "max_mass_drift": res.max_mass_drift,
        "blowup": res.blowup is not None,
        "blowup_report": res.blowup,
        "max_amplitude": {"initial": float(np.max(np.abs(res.snapshots[0][1]))) if res.snapshots else None,
                          "final": float(np.max(np.abs(res.state.values)))},
    }
    if cfg["dt_study"] and res.blowup is None:
        dts = [fc.dt / 2**k for k in range(5)]
        rows = dt_refinement_study(fc, dts)
        summary["dt_study"] = rows
        if out:
            lines = ["# " + json.dumps(summary["config"], sort_keys=True), "dt,error_max,error_l2,order_max,order_l2"]
            for r in rows:
                lines.append(f"{r['dt']:.6e},{r['error_max']:.5e},{r['error_l2']:.5e},"
                             f"{r.get('order_max', float('nan')):.4f},{r.get('order_l2', float('nan')):.4f}")
            (out / "dt_study.csv").write_text("\n".join(lines) + "\n")
    sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK


def cmd_validate(cfg: dict, perturb_stiffness: float = 0.0) -> int:
    results = run_checks(cfg["filter"], perturb_stiffness)
    if not results:
        raise UsageError(f"no validation checks match {cfg['filter']!r}")
    for r in results:
        sys.stdout.write(json.dumps(r.as_dict()) + "\n")
    failed = [r.name for r in results if not r.passed]
    sys.stdout.write(json.dumps({"summary": {"total": len(results), "failed": failed}}) + "\n")
    return EXIT_NUMERIC if failed else EXIT_OK


COMMANDS = {"solve": cmd_solve, "converge": cmd_converge, "table1": cmd_table1,
            "fnls": cmd_fnls, "validate": cmd_validate}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        check_config(cfg)
    except UsageError as exc:
        print(f"mcfrac {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"mcfrac {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, DataError, ConvergenceError, EigenSolverError,
            SingularOperatorError, ValueError) as exc:
        print(f"mcfrac {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
