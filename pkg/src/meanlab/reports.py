"""Structured run reports: versioned JSON payloads plus CSV sidecars.

Payloads are plain dicts with fixed key order so identical invocations
serialize byte for byte; the determinism hash covers everything except
timing.  Constants keep full double precision (shortest round-trip
decimal); per-point margins are rounded to 9 significant digits.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import asdict

from . import __version__
from .fenton import FentonTrace
from .gallery import AsymptoticEntry, ScenarioReport, StripBoundEntry
from .properties import CheckReport, PointMean, RadiusReport
from .special import CriticalConstants, Threshold

SCHEMA_VERSION = 1


def sig9(x: float) -> float:
    """Round to 9 significant digits (grid margins)."""
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.9g}")


def _finite_or_str(x: float):
    return x if math.isfinite(x) else repr(x)


def check_report_to_dict(report: CheckReport) -> dict:
    return {
        "mean_kind": report.mean_kind,
        "tol": report.tol,
        "two_sided": report.two_sided,
        "points_checked": report.points_checked,
        "violation_count": len(report.violations),
        "inconclusive_count": len(report.inconclusive),
        "worst_margin": _finite_or_str(sig9(report.worst_margin)),
        "violations": [
            {"point": list(v.point),
             "mean_value": sig9(v.mean_value),
             "field_value": sig9(v.field_value),
             "margin": sig9(v.margin)}
            for v in report.violations
        ],
        "inconclusive": [list(p) for p in report.inconclusive],
        "config": dict(report.config),
    }


def radius_report_to_dict(report: RadiusReport) -> dict:
    return {
        "sup_r_minus_abs": sig9(report.sup_r_minus_abs),
        "inf_r_minus_abs": sig9(report.inf_r_minus_abs),
        "lipschitz_estimate": sig9(report.lipschitz_estimate),
        "samples": report.samples,
    }


def threshold_to_dict(threshold: Threshold) -> dict:
    if threshold.unbounded:
        return {"unbounded": True,
                "searched_up_to": threshold.bracket[1],
                "residual_at_ceiling": threshold.residual}
    return {"unbounded": False,
            "value": threshold.value,
            "bracket": list(threshold.bracket),
            "residual": threshold.residual}


def constants_to_dict(constants: CriticalConstants) -> dict:
    return asdict(constants)


def _aux_to_jsonable(aux: dict) -> dict:
    out = {}
    for key, value in aux.items():
        if isinstance(value, list) and value and isinstance(
                value[0], (StripBoundEntry, AsymptoticEntry)):
            out[key] = [asdict(entry) for entry in value]
        elif isinstance(value, float):
            out[key] = _finite_or_str(value)
        else:
            out[key] = value
    return out


def scenario_report_to_dict(report: ScenarioReport) -> dict:
    return {
        "scenario": report.name,
        "parameters": {k: v for k, v in sorted(report.parameters.items())},
        "supermedian": check_report_to_dict(report.supermedian),
        "median": check_report_to_dict(report.median),
        "aux": _aux_to_jsonable(report.aux),
        "outcomes": report.outcomes,
        "expected": report.expected,
        "passed": report.passed,
        "notes": report.notes,
    }


def make_run_report(command: list[str], config: dict, results: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "meanlab",
        "tool_version": __version__,
        "command": list(command),
        "config": config,
        "results": results,
    }


def determinism_hash(report: dict) -> str:
    """SHA-256 of the payload with timing excluded."""
    trimmed = {k: v for k, v in report.items()
               if k not in ("timing_s", "determinism_hash")}
    blob = json.dumps(trimmed, sort_keys=True, ensure_ascii=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def finalize_run_report(report: dict, timing_s: float) -> dict:
    report["timing_s"] = round(timing_s, 6)
    report["determinism_hash"] = determinism_hash(report)
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=True)


# ---------------------------------------------------------------------------
# CSV sidecars
# ---------------------------------------------------------------------------

def write_points_csv(path, points: list[PointMean]) -> None:
    """One row per grid point of a check sweep."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        dim = len(points[0].point) if points else 2
        coords = ["x1", "x2"][:dim]
        writer.writerow(coords + ["radius", "mean_value", "field_value",
                                  "margin", "err_estimate", "converged"])
        for pm in points:
            writer.writerow(
                [repr(c) for c in pm.point]
                + [repr(pm.radius), repr(sig9(pm.mean.value)),
                   repr(sig9(pm.field_value)), repr(sig9(pm.margin)),
                   repr(pm.mean.err_estimate), int(pm.mean.converged)])


def write_profile_csv(path, trace: FentonTrace) -> None:
    """Wide table: one row per angle, one column per iteration."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        n_iter = trace.profiles[-1].iteration
        writer.writerow(["angle"] + [f"alpha_{k}" for k in range(n_iter + 1)])
        angles = trace.profiles[0].angles
        for i, angle in enumerate(angles):
            writer.writerow([repr(float(angle))]
                            + [repr(float(p.alphas[i])) for p in trace.profiles])


def write_strip_csv(path, entries: list[StripBoundEntry]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "half_width", "radius", "sigma_strip",
                         "bound", "within_bound", "converged"])
        for e in entries:
            writer.writerow([repr(e.t), repr(e.half_width), repr(e.radius),
                             repr(sig9(e.sigma_strip)), repr(e.bound),
                             int(e.within_bound), int(e.converged)])


def write_asymptotic_csv(path, entries: list[AsymptoticEntry]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "rho_star", "ratio", "error"])
        for e in entries:
            writer.writerow([repr(e.t),
                             "" if e.rho_star is None else repr(e.rho_star),
                             "" if e.ratio is None else repr(sig9(e.ratio)),
                             e.error or ""])
