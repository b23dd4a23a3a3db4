"""Restricted means: circle averages, disk averages, interval averages,
and the median-radius solver.

Quadrature panels are split at the angles/abscissas/radii where the field's
declared non-smoothness loci meet the integration set, plus numerically
located switching points of min/max combinators.  Smooth full-circle
integrands take the spectrally accurate periodic-trapezoid path.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, NoSignChange
from .exprs import FieldSpec, HyperplaneLocus, PointLocus, SphereLocus
from .quadrature import (DEFAULT_POLICY, EvalCounter, InfinityPolicy,
                         MeanResult, QuadConfig, adaptive_segments,
                         apply_policy_scalar, bisect_root, periodic_mean,
                         tighten)

TWO_PI = 2.0 * math.pi

_CROSS_SCAN = 512            # coarse samples when hunting min/max switches
_ANGLE_EPS = 1e-12           # dedup tolerance for split angles


def _check_center(center, dim: int) -> np.ndarray:
    c = np.asarray(center, dtype=float).reshape(-1)
    if c.shape[0] != dim:
        raise DimensionMismatch(f"center has {c.shape[0]} coords, field is {dim}D")
    if not np.all(np.isfinite(c)):
        raise ValueError("center must be finite")
    return c


def _check_radius(radius: float) -> float:
    radius = float(radius)
    if not (radius > 0) or not math.isfinite(radius):
        raise ValueError(f"radius must be a positive finite real, got {radius}")
    return radius


# ---------------------------------------------------------------------------
# Split points from loci
# ---------------------------------------------------------------------------

def circle_locus_angles(loci, center: np.ndarray, rho: float) -> list[float]:
    """Angles where the circle of given center/radius meets the loci."""
    cx, cy = center
    out: list[float] = []
    for loc in loci:
        if isinstance(loc, HyperplaneLocus):
            if loc.axis == 1:
                u = (loc.value - cx) / rho
                if -1.0 <= u <= 1.0:
                    t = math.acos(u)
                    out.extend((t, TWO_PI - t))
            else:
                w = (loc.value - cy) / rho
                if -1.0 <= w <= 1.0:
                    t = math.asin(w)
                    out.extend((t % TWO_PI, (math.pi - t) % TWO_PI))
        elif isinstance(loc, SphereLocus):
            wx, wy = loc.center[0] - cx, loc.center[1] - cy
            dist = math.hypot(wx, wy)
            if dist == 0.0:
                continue
            u = (dist * dist + rho * rho - loc.radius * loc.radius) / (2 * dist * rho)
            if -1.0 <= u <= 1.0:
                phi = math.atan2(wy, wx)
                t = math.acos(u)
                out.extend(((phi + t) % TWO_PI, (phi - t) % TWO_PI))
        elif isinstance(loc, PointLocus):
            wx, wy = loc.point[0] - cx, loc.point[1] - cy
            dist = math.hypot(wx, wy)
            if abs(dist - rho) <= 1e-12 * max(rho, 1.0):
                out.append(math.atan2(wy, wx) % TWO_PI)
    return out


def radial_locus_radii(loci, center: np.ndarray) -> list[float]:
    """Radii s at which the circle S(center, s) is tangent to / hits the loci."""
    cx, cy = center
    out: list[float] = []
    for loc in loci:
        if isinstance(loc, HyperplaneLocus):
            coord = cx if loc.axis == 1 else cy
            out.append(abs(coord - loc.value))
        elif isinstance(loc, SphereLocus):
            dist = math.hypot(loc.center[0] - cx, loc.center[1] - cy)
            out.extend((abs(dist - loc.radius), dist + loc.radius))
        elif isinstance(loc, PointLocus):
            out.append(math.hypot(loc.point[0] - cx, loc.point[1] - cy))
    return out


def interval_locus_points(loci, lo: float, hi: float) -> list[float]:
    """Abscissas in (lo, hi) where 1D loci sit."""
    out: list[float] = []
    for loc in loci:
        if isinstance(loc, HyperplaneLocus):
            out.append(loc.value)
        elif isinstance(loc, SphereLocus):
            q = loc.center[0]
            out.extend((q - loc.radius, q + loc.radius))
        elif isinstance(loc, PointLocus):
            out.append(loc.point[0])
    return [x for x in out if lo < x < hi]


def _refine_crossings(h, samples: np.ndarray, values: np.ndarray,
                      wrap: bool) -> list[float]:
    """Bisect every sign change of h between consecutive samples."""
    out = []
    n = len(samples)
    last = n if wrap else n - 1
    for i in range(last):
        j = (i + 1) % n
        va, vb = values[i], values[j]
        if va == 0.0 or vb == 0.0:
            continue
        if (va < 0) == (vb < 0):
            continue
        a = samples[i]
        b = samples[j] if j > i else samples[0] + (samples[1] - samples[0]) * n
        for _ in range(60):
            mid = 0.5 * (a + b)
            vm = h(np.array([mid]))[0]
            if vm == 0.0:
                a = b = mid
                break
            if (vm < 0) == (va < 0):
                a, va = mid, vm
            else:
                b = mid
        out.append(0.5 * (a + b))
    return out


def _switch_angles(field: FieldSpec, center: np.ndarray, rho: float) -> list[float]:
    pairs = field.switch_pairs()
    if not pairs:
        return []
    thetas = TWO_PI * (np.arange(_CROSS_SCAN) + 0.5) / _CROSS_SCAN
    pts = center[None, :] + rho * np.stack(
        (np.cos(thetas), np.sin(thetas)), axis=1)
    out = []
    for left, right in pairs:
        def h(ts, left=left, right=right):
            p = center[None, :] + rho * np.stack((np.cos(ts), np.sin(ts)), axis=1)
            with np.errstate(divide="ignore", over="ignore"):
                return left.evaluate(p) - right.evaluate(p)
        with np.errstate(divide="ignore", over="ignore"):
            vals = left.evaluate(pts) - right.evaluate(pts)
        vals = np.where(np.isnan(vals), 0.0, vals)
        out.extend(t % TWO_PI for t in _refine_crossings(h, thetas, vals, wrap=True))
    return out


def _switch_points_1d(field: FieldSpec, lo: float, hi: float) -> list[float]:
    pairs = field.switch_pairs()
    if not pairs:
        return []
    xs = lo + (hi - lo) * (np.arange(_CROSS_SCAN) + 0.5) / _CROSS_SCAN
    out = []
    for left, right in pairs:
        def h(ss, left=left, right=right):
            with np.errstate(divide="ignore", over="ignore"):
                return left.evaluate(ss[:, None]) - right.evaluate(ss[:, None])
        with np.errstate(divide="ignore", over="ignore"):
            vals = left.evaluate(xs[:, None]) - right.evaluate(xs[:, None])
        vals = np.where(np.isnan(vals), 0.0, vals)
        out.extend(_refine_crossings(h, xs, vals, wrap=False))
    return [x for x in out if lo < x < hi]


def _dedup_sorted(values, eps: float) -> list[float]:
    vals = sorted(values)
    out: list[float] = []
    for v in vals:
        if not out or v - out[-1] > eps:
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# Means
# ---------------------------------------------------------------------------

def circle_mean(field: FieldSpec, center, radius: float,
                cfg: QuadConfig | None = None,
                inf: InfinityPolicy = DEFAULT_POLICY) -> MeanResult:
    """Average of the field over the circle of the given center and radius."""
    if field.dim != 2:
        raise DimensionMismatch("circle_mean requires a 2D field")
    cfg = cfg or QuadConfig()
    c = _check_center(center, 2)
    rho = _check_radius(radius)

    counter = EvalCounter(
        lambda ts: field.evaluate(
            c[None, :] + rho * np.stack((np.cos(ts), np.sin(ts)), axis=1)),
        inf)

    angles = circle_locus_angles(field.all_loci(), c, rho)
    angles += _switch_angles(field, c, rho)
    angles = _dedup_sorted([a % TWO_PI for a in angles], _ANGLE_EPS)

    if not angles:
        value, err, converged = periodic_mean(counter, cfg)
        return MeanResult(value, err, counter.evaluations, converged,
                          counter.clamped)

    breaks = angles + [angles[0] + TWO_PI]
    integral, err, converged = adaptive_segments(
        counter, breaks, cfg.abs_tol * TWO_PI, cfg)
    return MeanResult(integral / TWO_PI, err / TWO_PI, counter.evaluations,
                      converged, counter.clamped)


def interval_mean(field: FieldSpec, center, radius: float,
                  cfg: QuadConfig | None = None,
                  inf: InfinityPolicy = DEFAULT_POLICY) -> MeanResult:
    """Average of a 1D field over [center - radius, center + radius]."""
    if field.dim != 1:
        raise DimensionMismatch("interval_mean requires a 1D field")
    cfg = cfg or QuadConfig()
    c = _check_center(center, 1)[0]
    rho = _check_radius(radius)
    lo, hi = c - rho, c + rho

    counter = EvalCounter(lambda ss: field.evaluate(ss[:, None]), inf)

    pts = interval_locus_points(field.all_loci(), lo, hi)
    pts += _switch_points_1d(field, lo, hi)
    breaks = [lo] + _dedup_sorted(pts, _ANGLE_EPS * max(1.0, hi - lo)) + [hi]

    integral, err, converged = adaptive_segments(
        counter, breaks, cfg.abs_tol * (2 * rho), cfg)
    return MeanResult(integral / (2 * rho), err / (2 * rho),
                      counter.evaluations, converged, counter.clamped)


def disk_mean(field: FieldSpec, center, radius: float,
              cfg: QuadConfig | None = None,
              inf: InfinityPolicy = DEFAULT_POLICY) -> MeanResult:
    """Average over the closed disk, computed as the 2s/rho^2-weighted
    radial integral of circle averages."""
    if field.dim != 2:
        raise DimensionMismatch("disk_mean requires a 2D field")
    cfg = cfg or QuadConfig()
    c = _check_center(center, 2)
    rho = _check_radius(radius)

    angular_cfg = tighten(cfg, 0.5)
    state = {"evals": 0, "max_err": 0.0, "all_conv": True, "clamped": False}

    def weighted_sigma(ss: np.ndarray) -> np.ndarray:
        out = np.empty_like(ss)
        for i, s in enumerate(ss):
            res = circle_mean(field, c, float(s), angular_cfg, inf)
            state["evals"] += res.evaluations
            state["max_err"] = max(state["max_err"], res.err_estimate)
            state["all_conv"] = state["all_conv"] and res.converged
            state["clamped"] = state["clamped"] or res.clamped
            out[i] = res.value * 2.0 * s / (rho * rho)
        return out

    radii = [s for s in radial_locus_radii(field.all_loci(), c) if 0 < s < rho]
    breaks = [0.0] + _dedup_sorted(radii, _ANGLE_EPS * max(1.0, rho)) + [rho]

    integral, radial_err, radial_conv = adaptive_segments(
        weighted_sigma, breaks, cfg.abs_tol * 0.5, cfg, panels_per_segment=4)

    err = radial_err + state["max_err"]
    converged = radial_conv and state["all_conv"] and err <= cfg.abs_tol
    return MeanResult(integral, err, state["evals"], converged, state["clamped"])


def point_sigma_1d(field: FieldSpec, center, radius: float,
                   inf: InfinityPolicy = DEFAULT_POLICY) -> MeanResult:
    """The 1D analog of the circle mean: the two-point average at x +- rho."""
    if field.dim != 1:
        raise DimensionMismatch("point_sigma_1d requires a 1D field")
    c = _check_center(center, 1)[0]
    rho = _check_radius(radius)
    vals = field.evaluate(np.array([[c - rho], [c + rho]]))
    a, ca = apply_policy_scalar(float(vals[0]), inf)
    b, cb = apply_policy_scalar(float(vals[1]), inf)
    return MeanResult(0.5 * (a + b), 0.0, 2, True, ca or cb)


def mean_value(field: FieldSpec, center, radius: float, mean_kind: str,
               cfg: QuadConfig | None = None,
               inf: InfinityPolicy = DEFAULT_POLICY) -> MeanResult:
    """Dispatch to the right mean for the field dimension and kind."""
    if mean_kind not in ("sigma", "lambda"):
        raise ValueError(f"mean_kind must be 'sigma' or 'lambda', got {mean_kind!r}")
    if field.dim == 2:
        if mean_kind == "sigma":
            return circle_mean(field, center, radius, cfg, inf)
        return disk_mean(field, center, radius, cfg, inf)
    if mean_kind == "sigma":
        return point_sigma_1d(field, center, radius, inf)
    return interval_mean(field, center, radius, cfg, inf)


def median_radius(field: FieldSpec, center, bracket: tuple[float, float],
                  tol: float = 1e-9, cfg: QuadConfig | None = None,
                  inf: InfinityPolicy = DEFAULT_POLICY) -> float:
    """Radius rho with sigma_{x,rho}(f) = f(x), located by bisection.

    The bracket endpoints must give circle means on opposite sides of the
    center value; the result is resolved to bracket width <= tol.
    """
    cfg = cfg or QuadConfig()
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (0 < lo < hi):
        raise ValueError(f"bracket must satisfy 0 < lo < hi, got {bracket}")
    dim = field.dim
    c = _check_center(center, dim)
    f0, _ = apply_policy_scalar(field.value_at(c), inf)

    def residual(rho: float) -> float:
        if dim == 2:
            return circle_mean(field, c, rho, cfg, inf).value - f0
        return point_sigma_1d(field, c, rho, inf).value - f0

    rlo, rhi = residual(lo), residual(hi)
    if rlo == 0.0:
        return lo
    if rhi == 0.0:
        return hi
    if (rlo < 0) == (rhi < 0):
        raise NoSignChange(
            f"no sign change on bracket ({lo}, {hi}): "
            f"residuals {rlo:.3e} and {rhi:.3e}")
    root, _, _ = bisect_root(residual, lo, hi, tol)
    return root
