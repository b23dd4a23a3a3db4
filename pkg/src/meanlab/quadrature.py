"""Core quadrature engines.

Two integration styles are used everywhere:

* periodic trapezoid with panel doubling, for smooth integrands on the
  full circle (spectrally accurate), and
* composite midpoint with global worst-first bisection of segments, for
  integrands with declared kinks or endpoint trouble.

Both report an error estimate; budget exhaustion is reported through
``converged=False`` rather than an exception, so callers can classify
the result as inconclusive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import InfiniteValue


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-9
    max_subdivisions: int = 24
    initial_panels: int = 64

    def __post_init__(self):
        if not (self.abs_tol > 0):
            raise ValueError("abs_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.initial_panels < 4 or self.initial_panels % 2:
            raise ValueError("initial_panels must be even and >= 4")


@dataclass(frozen=True)
class InfinityPolicy:
    """What to do when a field evaluates to +infinity.

    ``clamp`` replaces the function by min{f, clamp_at} (truncation from
    above is harmless for supermedian checks); ``error`` raises.
    """
    mode: str
    clamp_at: float = math.inf

    @classmethod
    def error(cls) -> "InfinityPolicy":
        return cls(mode="error")

    @classmethod
    def clamp(cls, n: float = 1e12) -> "InfinityPolicy":
        if not math.isfinite(n):
            raise ValueError("clamp level must be finite")
        return cls(mode="clamp", clamp_at=float(n))


DEFAULT_POLICY = InfinityPolicy.clamp(1e12)


@dataclass(frozen=True)
class MeanResult:
    value: float
    err_estimate: float
    evaluations: int
    converged: bool
    clamped: bool = False


class EvalCounter:
    """Wraps an integrand, applying the infinity policy and counting calls."""

    def __init__(self, raw, policy: InfinityPolicy):
        self._raw = raw
        self._policy = policy
        self.evaluations = 0
        self.clamped = False

    def __call__(self, xs: np.ndarray) -> np.ndarray:
        vals = np.asarray(self._raw(xs), dtype=float)
        self.evaluations += vals.size
        if np.any(np.isnan(vals)):
            raise InfiniteValue("field evaluated to NaN")
        if np.any(np.isneginf(vals)):
            raise InfiniteValue("field evaluated to -infinity")
        if self._policy.mode == "error":
            if np.any(np.isposinf(vals)):
                raise InfiniteValue("field evaluated to +infinity")
            return vals
        if np.any(vals > self._policy.clamp_at):
            self.clamped = True
            vals = np.minimum(vals, self._policy.clamp_at)
        return vals


def apply_policy_scalar(value: float, policy: InfinityPolicy) -> tuple[float, bool]:
    """Policy for a single field value; returns (value, clamped)."""
    if math.isnan(value):
        raise InfiniteValue("field evaluated to NaN")
    if value == -math.inf:
        raise InfiniteValue("field evaluated to -infinity")
    if policy.mode == "error":
        if value == math.inf:
            raise InfiniteValue("field evaluated to +infinity")
        return value, False
    if value > policy.clamp_at:
        return policy.clamp_at, True
    return value, False


def periodic_mean(g, cfg: QuadConfig) -> tuple[float, float, bool]:
    """Mean of a periodic integrand over [0, 2pi) by trapezoid doubling.

    ``g`` maps an array of angles to values.  Returns (mean, err, converged);
    evaluation counting is the caller's business (wrap g in an EvalCounter).
    """
    n = cfg.initial_panels
    thetas = 2.0 * math.pi * np.arange(n) / n
    mean = float(np.mean(g(thetas)))
    err = math.inf
    for _ in range(cfg.max_subdivisions):
        mid = 2.0 * math.pi * (np.arange(n) + 0.5) / n
        mean_new = 0.5 * (mean + float(np.mean(g(mid))))
        err = abs(mean_new - mean)
        mean = mean_new
        n *= 2
        if err <= cfg.abs_tol:
            return mean, err, True
    return mean, err, False


@dataclass
class _Segment:
    a: float
    b: float
    depth: int
    value: float
    err: float


def _midpoint_estimate(g, a: float, b: float, n0: int) -> tuple[float, float]:
    """Composite midpoint at n0, 2*n0, and 4*n0 panels, Romberg-combined.

    Midpoint is h^2-accurate; one extrapolation of each consecutive pair
    gives two h^4 values whose difference is the error estimate, and a
    second extrapolation returns an h^6 value on smooth panels.  On a
    kinked or singular panel the estimate simply stays large and the
    segment keeps getting bisected.
    """
    sums = []
    for n in (n0, 2 * n0, 4 * n0):
        h = (b - a) / n
        sums.append(float(np.sum(g(a + (np.arange(n) + 0.5) * h))) * h)
    r12 = sums[1] + (sums[1] - sums[0]) / 3.0
    r23 = sums[2] + (sums[2] - sums[1]) / 3.0
    return r23 + (r23 - r12) / 15.0, abs(r23 - r12)


def adaptive_segments(g, breakpoints, total_tol: float, cfg: QuadConfig,
                      panels_per_segment: int = 8,
                      max_segments: int = 20000) -> tuple[float, float, bool]:
    """Integral of g over [breakpoints[0], breakpoints[-1]].

    Starts with one segment per consecutive breakpoint pair and repeatedly
    bisects the segment with the worst error estimate until the summed
    estimate meets ``total_tol`` or every refinable segment has reached the
    subdivision depth limit.  Deterministic: ties go to the earliest segment
    and the final sum is accumulated in left-to-right order with fsum.
    """
    segs: list[_Segment] = []
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        if b - a <= 0:
            continue
        val, err = _midpoint_estimate(g, a, b, panels_per_segment)
        segs.append(_Segment(a, b, 0, val, err))
    if not segs:
        return 0.0, 0.0, True

    while True:
        total_err = math.fsum(s.err for s in segs)
        if total_err <= total_tol:
            converged = True
            break
        worst = None
        for s in segs:
            if s.depth < cfg.max_subdivisions and (worst is None or s.err > worst.err):
                worst = s
        if worst is None or len(segs) >= max_segments:
            converged = False
            break
        mid = 0.5 * (worst.a + worst.b)
        lval, lerr = _midpoint_estimate(g, worst.a, mid, panels_per_segment)
        rval, rerr = _midpoint_estimate(g, mid, worst.b, panels_per_segment)
        idx = segs.index(worst)
        segs[idx:idx + 1] = [
            _Segment(worst.a, mid, worst.depth + 1, lval, lerr),
            _Segment(mid, worst.b, worst.depth + 1, rval, rerr),
        ]

    segs.sort(key=lambda s: s.a)
    value = math.fsum(s.value for s in segs)
    err = math.fsum(s.err for s in segs)
    return value, err, converged


def bisect_root(fn, lo: float, hi: float, tol: float,
                max_iter: int = 200) -> tuple[float, float, float]:
    """Plain bisection for a sign change of fn on [lo, hi].

    Assumes fn(lo) and fn(hi) have opposite signs (caller checks).  Returns
    (root, lo, hi) with hi - lo <= tol; root is the bracket midpoint.
    """
    flo = fn(lo)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        fmid = fn(mid)
        if fmid == 0.0:
            return mid, mid, mid
        if (flo < 0) == (fmid < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi), lo, hi


def tighten(cfg: QuadConfig, factor: float) -> QuadConfig:
    return replace(cfg, abs_tol=cfg.abs_tol * factor)
