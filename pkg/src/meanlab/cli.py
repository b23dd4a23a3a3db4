"""Command-line interface.

Subcommands: solve-c0, check, scenario, fenton, alpha-star.

Exit codes: 0 all checks passed, 1 violations found, 2 inconclusive
results only, 64 usage or parse error.  Reports are versioned JSON
(written to --out, or stdout); point clouds and profiles go to CSV
sidecars.  MEANLAB_OUT_DIR sets the default output directory.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from .errors import (DomainError, InvalidOverride, MeanLabError, ParseError,
                     UnknownScenario)
from .gallery import get_scenario, list_scenarios, run_scenario
from .grids import grid_dim
from .parser import parse_field, parse_grid, parse_radius
from .fenton import fenton_trace
from .properties import grid_means, reports_from_means
from .quadrature import DEFAULT_POLICY, QuadConfig
from .reports import (check_report_to_dict, constants_to_dict,
                      finalize_run_report, make_run_report, report_json,
                      scenario_report_to_dict, threshold_to_dict,
                      write_asymptotic_csv, write_points_csv,
                      write_profile_csv, write_strip_csv)
from .special import alpha_star_1d, alpha_star_2d, solve_c0

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64


class _ArgumentParser(argparse.ArgumentParser):
    """argparse with the usage exit code this tool promises."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _out_dir() -> Path:
    return Path(os.environ.get("MEANLAB_OUT_DIR", "."))


def _emit(report: dict, out: str | None, started: float) -> None:
    finalize_run_report(report, time.perf_counter() - started)
    text = report_json(report)
    if out:
        path = _out_dir() / out if not os.path.isabs(out) else Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n")
        print(f"report written to {path}")
    else:
        print(text)


def _quad_config(args) -> QuadConfig:
    return QuadConfig(abs_tol=args.quad_tol,
                      max_subdivisions=args.max_subdivisions,
                      initial_panels=args.initial_panels)


def _add_quad_flags(parser) -> None:
    parser.add_argument("--quad-tol", type=float, default=1e-9,
                        help="quadrature absolute tolerance (default 1e-9)")
    parser.add_argument("--max-subdivisions", type=int, default=24,
                        help="panel refinement depth budget (default 24)")
    parser.add_argument("--initial-panels", type=int, default=64,
                        help="starting panel count (default 64)")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_solve_c0(args, argv) -> int:
    started = time.perf_counter()
    if not (0 < args.tol < 1e-2):
        print("solve-c0: --tol must lie in (0, 1e-2)", file=sys.stderr)
        return EXIT_USAGE
    constants = solve_c0(args.tol)
    report = make_run_report(argv, {"tol": args.tol},
                             {"constants": constants_to_dict(constants)})
    _emit(report, args.out, started)
    return EXIT_OK


def _cmd_check(args, argv) -> int:
    started = time.perf_counter()
    grid = parse_grid(args.grid)
    dim = grid_dim(grid)
    field = parse_field(args.field, dim)
    radius = parse_radius(args.radius, dim)
    cfg = _quad_config(args)

    points = grid_means(field, radius, grid, args.mean, cfg, DEFAULT_POLICY)
    sup, med = reports_from_means(points, args.mean, args.tol, cfg)
    report_used = med if args.median else sup
    results = {
        "field": field.expr_string(),
        "radius": radius.expr_string(),
        "grid": args.grid,
        "check": check_report_to_dict(report_used),
        "quadrature_stats": {
            "means_computed": len(points),
            "field_evaluations": sum(pm.mean.evaluations for pm in points),
            "unconverged": sum(not pm.mean.converged for pm in points),
        },
    }
    report = make_run_report(argv, {"mean": args.mean, "tol": args.tol,
                                    "quad_tol": args.quad_tol,
                                    "median": bool(args.median)}, results)
    _emit(report, args.out, started)
    if args.csv:
        path = _out_dir() / args.csv if not os.path.isabs(args.csv) else Path(args.csv)
        path.parent.mkdir(parents=True, exist_ok=True)
        write_points_csv(path, points)
        print(f"points written to {path}")
    if report_used.violations:
        return EXIT_VIOLATIONS
    if report_used.inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _parse_param(item: str) -> tuple[str, str]:
    if "=" not in item:
        raise InvalidOverride(f"--param expects key=value, got {item!r}")
    key, value = item.split("=", 1)
    return key.strip(), value.strip()


def _cmd_scenario(args, argv) -> int:
    started = time.perf_counter()
    if args.name == "list":
        for sc in list_scenarios():
            print(f"{sc.name:24s} d={sc.dimension} mean={sc.mean_kind:6s} {sc.summary}")
        return EXIT_OK
    get_scenario(args.name)
    overrides = dict(_parse_param(p) for p in args.param or [])
    cfg = _quad_config(args)
    result = run_scenario(args.name, overrides, cfg)

    report = make_run_report(argv, {"scenario": args.name,
                                    "quad_tol": args.quad_tol},
                             scenario_report_to_dict(result))
    out_file = args.out and f"{args.name}.json"
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        finalize_run_report(report, time.perf_counter() - started)
        (out_dir / out_file).write_text(report_json(report) + "\n")
        print(f"report written to {out_dir / out_file}")
        if "strip_bound" in result.aux:
            write_strip_csv(out_dir / f"{args.name}-strip.csv",
                            result.aux["strip_bound"])
        if "asymptotic" in result.aux:
            write_asymptotic_csv(out_dir / f"{args.name}-asymptotic.csv",
                                 result.aux["asymptotic"])
    else:
        _emit(report, None, started)

    print(f"scenario {args.name}: {'pass' if result.passed else 'FAIL'}")
    if result.passed:
        return EXIT_OK
    conclusive = (not result.supermedian.inconclusive
                  and not result.median.inconclusive)
    return EXIT_VIOLATIONS if conclusive else EXIT_INCONCLUSIVE


def _cmd_fenton(args, argv) -> int:
    started = time.perf_counter()
    radius = parse_radius(args.radius, 2)
    trace = fenton_trace(radius, args.target, args.angles, args.max_iter)
    results = {
        "radius": radius.expr_string(),
        "target": args.target,
        "n_angles": args.angles,
        "n_stop": trace.n_stop,
        "cleared": trace.cleared,
        "final_min_alpha": trace.final.min_alpha(),
        "final_max_alpha": float(max(trace.final.alphas)),
    }
    report = make_run_report(argv, {"target": args.target,
                                    "angles": args.angles,
                                    "max_iter": args.max_iter}, results)
    _emit(report, args.out, started)
    if args.csv:
        path = _out_dir() / args.csv if not os.path.isabs(args.csv) else Path(args.csv)
        path.parent.mkdir(parents=True, exist_ok=True)
        write_profile_csv(path, trace)
        print(f"profiles written to {path}")
    return EXIT_OK


def _cmd_alpha_star(args, argv) -> int:
    started = time.perf_counter()
    try:
        if args.dim == 2:
            threshold = alpha_star_2d(args.c, args.alpha_max, args.tol)
        else:
            threshold = alpha_star_1d(args.c, args.tol)
        results = {"dim": args.dim, "c": args.c,
                   "threshold": threshold_to_dict(threshold)}
    except DomainError as exc:
        results = {"dim": args.dim, "c": args.c,
                   "error": "DomainError", "explanation": str(exc)}
    report = make_run_report(argv, {"dim": args.dim, "c": args.c,
                                    "tol": args.tol}, results)
    _emit(report, args.out, started)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="meanlab",
        description="numerical laboratory for restricted mean value properties")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-c0", help="critical growth constant on the line")
    p.add_argument("--tol", type=float, default=1e-12,
                   help="bisection bracket width (default 1e-12)")
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=_cmd_solve_c0)

    p = sub.add_parser("check", help="certify a supermedian/median property on a grid")
    p.add_argument("--field", required=True, help="field expression")
    p.add_argument("--radius", required=True, help="radius expression")
    p.add_argument("--grid", required=True,
                   help="grid expression, e.g. polar(rmin=1e-3,rmax=1e4,nr=40,na=24)")
    p.add_argument("--mean", choices=("sigma", "lambda"), default="sigma")
    p.add_argument("--median", action="store_true",
                   help="check the two-sided (median) property instead")
    p.add_argument("--tol", type=float, default=1e-8,
                   help="violation tolerance (default 1e-8)")
    _add_quad_flags(p)
    p.add_argument("--out", help="write the JSON report to this file")
    p.add_argument("--csv", help="write per-point results to this CSV file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("scenario", help="run a named scenario ('list' to enumerate)")
    p.add_argument("name", help="scenario name, or 'list'")
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="override a scenario parameter (repeatable)")
    _add_quad_flags(p)
    p.add_argument("--out", help="directory for the report and CSV sidecars")
    p.set_defaults(func=_cmd_scenario)

    p = sub.add_parser("fenton", help="outward propagation trace on the unit circle")
    p.add_argument("--radius", required=True, help="radius expression")
    p.add_argument("--target", type=float, required=True,
                   help="level the profile minimum must clear")
    p.add_argument("--angles", type=int, default=720)
    p.add_argument("--max-iter", type=int, default=100000)
    p.add_argument("--out", help="write the JSON report to this file")
    p.add_argument("--csv", help="write the profile table to this CSV file")
    p.set_defaults(func=_cmd_fenton)

    p = sub.add_parser("alpha-star", help="critical exponent thresholds")
    p.add_argument("--dim", type=int, choices=(1, 2), required=True)
    p.add_argument("--c", type=float, required=True,
                   help="radius growth factor (c > 1; dim 1 needs c > c0)")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--alpha-max", type=float, default=50.0,
                   help="search ceiling for the 2D threshold")
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(func=_cmd_alpha_star)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, ["meanlab"] + argv)
    except ParseError as exc:
        print(f"meanlab: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnknownScenario, InvalidOverride) as exc:
        print(f"meanlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MeanLabError as exc:
        print(f"meanlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
