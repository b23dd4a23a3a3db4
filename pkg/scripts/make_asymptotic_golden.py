#!/usr/bin/env python3
"""One-time dense-scan oracle for the median-radius ratios.

Recomputes the median radius of min{1, |y1|^-1} at (t, 0) with a method
independent of the library quadrature: the circle average reduces to a
1D integral over the angle, which is split analytically at the strip
crossings and integrated per segment with dyadically graded
Gauss-Legendre panels (the grading resolves the 1/rho boundary layers
at the crossings).  The root in rho comes from a coarse log scan
followed by bisection.

Writes tests/data/asymptotic_ratios.json, the golden file the acceptance
suite compares against.

Usage:  python scripts/make_asymptotic_golden.py [--out PATH]
"""

from __future__ import annotations

import argparse
import json
import math
from pathlib import Path

import numpy as np

GL_NODES = 48
GL_LAYERS = 60


def _gl_cache(n: int):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return nodes, weights


_NODES, _WEIGHTS = _gl_cache(GL_NODES)


def _integrate_graded(f, a: float, b: float) -> float:
    """Integral over [a, b] with dyadic grading toward both endpoints."""
    if b <= a:
        return 0.0
    mid = 0.5 * (a + b)
    total = 0.0
    for lo, hi, toward in ((a, mid, "left"), (mid, b, "right")):
        length = hi - lo
        if toward == "left":
            edges = sorted([lo + length * 0.5 ** k for k in range(GL_LAYERS)]) + [hi]
        else:
            edges = [lo] + sorted(hi - (hi - lo) * 0.5 ** k
                                  for k in range(GL_LAYERS, 0, -1)) + [hi]
        edges = sorted(set(edges))
        for x0, x1 in zip(edges[:-1], edges[1:]):
            half = 0.5 * (x1 - x0)
            centerx = 0.5 * (x0 + x1)
            total += half * float(np.sum(_WEIGHTS * f(centerx + half * _NODES)))
    return total


def sigma_circle(t: float, rho: float) -> float:
    """(1/pi) * integral over [0, pi] of min(1, 1/|t + rho cos(theta)|)."""
    def f(thetas):
        y1 = t + rho * np.cos(np.asarray(thetas))
        with np.errstate(divide="ignore"):
            return np.minimum(1.0, 1.0 / np.abs(y1))

    # angles where |y1| = 1: the min switches, splitting analytic pieces
    splits = [0.0, math.pi]
    for v in (1.0, -1.0):
        u = (v - t) / rho
        if -1.0 <= u <= 1.0:
            splits.append(math.acos(u))
    splits = sorted(set(splits))
    total = sum(_integrate_graded(f, a, b)
                for a, b in zip(splits[:-1], splits[1:]))
    return total / math.pi


def median_rho(t: float) -> float:
    target = 1.0 / t
    lo, hi = 2.0, t * math.log(t)
    while sigma_circle(t, hi) > target:
        hi *= 2.0
    while sigma_circle(t, lo) < target:
        lo *= 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if sigma_circle(t, mid) > target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-10 * hi:
            break
    return 0.5 * (lo + hi)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    t_values = [1e2, 1e3, 1e4]
    rows = []
    for t in t_values:
        rho = median_rho(t)
        ratio = rho / (t * math.log(t))
        resid = sigma_circle(t, rho) - 1.0 / t
        rows.append({"t": t, "rho_star": rho, "ratio": ratio,
                     "sigma_residual": resid})
        print(f"t={t:g}: rho*={rho:.6f} ratio={ratio:.9f} "
              f"residual={resid:.3e}")

    limit = 2.0 / math.pi
    print(f"limit 2/pi = {limit:.9f}; deviations:",
          [f"{(r['ratio'] - limit) / limit:+.3f}" for r in rows])

    out = Path(args.out) if args.out else (
        Path(__file__).resolve().parent.parent / "tests" / "data"
        / "asymptotic_ratios.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "generator": "scripts/make_asymptotic_golden.py",
        "method": ("per-segment Gauss-Legendre with dyadic grading at the "
                   "strip crossings, log scan plus bisection in rho"),
        "gl_nodes": GL_NODES,
        "gl_layers": GL_LAYERS,
        "limit_2_over_pi": limit,
        "entries": rows,
    }
    out.write_text(json.dumps(payload, indent=2) + "\n")
    print(f"golden file written to {out}")


if __name__ == "__main__":
    main()
