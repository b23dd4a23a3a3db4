#!/usr/bin/env python3
"""Run every registered scenario at default parameters and write reports.

Usage:  python scripts/run_all_scenarios.py [--out DIR] [--quad-tol TOL]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from meanlab.gallery import list_scenarios, run_scenario
from meanlab.quadrature import QuadConfig
from meanlab.reports import (finalize_run_report, make_run_report,
                             report_json, scenario_report_to_dict)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="reports")
    parser.add_argument("--quad-tol", type=float, default=1e-9)
    args = parser.parse_args()

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    cfg = QuadConfig(abs_tol=args.quad_tol)

    all_passed = True
    for scenario in list_scenarios():
        started = time.perf_counter()
        result = run_scenario(scenario.name, cfg=cfg)
        elapsed = time.perf_counter() - started
        report = make_run_report(
            ["run_all_scenarios", scenario.name],
            {"quad_tol": args.quad_tol},
            scenario_report_to_dict(result))
        finalize_run_report(report, elapsed)
        path = out_dir / f"{scenario.name}.json"
        path.write_text(report_json(report) + "\n")
        status = "pass" if result.passed else "FAIL"
        print(f"{scenario.name:24s} {status}  ({elapsed:6.1f}s)  -> {path}")
        all_passed = all_passed and result.passed
    return 0 if all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
