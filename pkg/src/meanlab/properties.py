"""Grid certification of supermedian / median properties and sampled
evidence for growth conditions on radius functions.

A point is a *violation* only if its mean is conclusive (quadrature
converged) and exceeds the tolerance; unconverged means are reported
separately as inconclusive so that quadrature stalls are never mistaken
for counterexamples.  Sampled growth/Lipschitz numbers are one-sided
evidence, not proofs: suprema are bounded below by samples, infima above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .exprs import FieldSpec, RadiusSpec
from .grids import GridSpec, enumerate_grid, grid_dim, neighbor_pairs
from .means import mean_value
from .quadrature import (DEFAULT_POLICY, InfinityPolicy, MeanResult,
                         QuadConfig, apply_policy_scalar)


@dataclass(frozen=True)
class Violation:
    point: tuple
    mean_value: float
    field_value: float
    margin: float


@dataclass(frozen=True)
class PointMean:
    """One grid point's mean against its center value."""
    point: tuple
    radius: float
    mean: MeanResult
    field_value: float

    @property
    def margin(self) -> float:
        return self.mean.value - self.field_value


@dataclass(frozen=True)
class CheckReport:
    mean_kind: str
    tol: float
    two_sided: bool
    points_checked: int
    violations: tuple[Violation, ...]
    inconclusive: tuple[tuple, ...]
    worst_margin: float
    config: dict

    @property
    def passed(self) -> bool:
        return not self.violations and not self.inconclusive


@dataclass(frozen=True)
class RadiusReport:
    sup_r_minus_abs: float
    inf_r_minus_abs: float
    lipschitz_estimate: float
    samples: int


def grid_means(field: FieldSpec, radius: RadiusSpec, grid: GridSpec,
               mean_kind: str = "sigma", cfg: QuadConfig | None = None,
               inf: InfinityPolicy = DEFAULT_POLICY) -> list[PointMean]:
    """Evaluate the one-radius mean at every grid point, in grid order."""
    cfg = cfg or QuadConfig()
    d = grid_dim(grid)
    if field.dim != d or radius.dim != d:
        raise DimensionMismatch(
            f"grid is {d}D but field is {field.dim}D and radius is {radius.dim}D")
    pts = enumerate_grid(grid)
    rhos = radius.evaluate(pts)
    fvals = field.evaluate(pts)
    out = []
    for p, rho, fv in zip(pts, rhos, fvals):
        res = mean_value(field, p, float(rho), mean_kind, cfg, inf)
        fv_pol, _ = apply_policy_scalar(float(fv), inf)
        out.append(PointMean(tuple(p), float(rho), res, fv_pol))
    return out


def _build_report(points: list[PointMean], mean_kind: str, tol: float,
                  two_sided: bool, cfg: QuadConfig,
                  inf: InfinityPolicy) -> CheckReport:
    violations = []
    inconclusive = []
    worst = -math.inf
    for pm in points:
        if not pm.mean.converged:
            inconclusive.append(pm.point)
            continue
        margin = pm.margin
        worst = max(worst, margin)
        exceeded = abs(margin) > tol if two_sided else margin > tol
        if exceeded:
            violations.append(Violation(pm.point, pm.mean.value,
                                        pm.field_value, margin))
    config = {
        "mean_kind": mean_kind,
        "tol": tol,
        "abs_tol": cfg.abs_tol,
        "max_subdivisions": cfg.max_subdivisions,
        "initial_panels": cfg.initial_panels,
        "infinity_mode": inf.mode,
        "clamp_at": inf.clamp_at,
    }
    return CheckReport(mean_kind=mean_kind, tol=tol, two_sided=two_sided,
                       points_checked=len(points),
                       violations=tuple(violations),
                       inconclusive=tuple(inconclusive),
                       worst_margin=worst, config=config)


def check_supermedian(field: FieldSpec, radius: RadiusSpec, grid: GridSpec,
                      mean_kind: str = "sigma", tol: float = 1e-8,
                      cfg: QuadConfig | None = None,
                      inf: InfinityPolicy = DEFAULT_POLICY) -> CheckReport:
    """Certify mean_{x,r(x)}(f) <= f(x) + tol at every grid point."""
    cfg = cfg or QuadConfig()
    points = grid_means(field, radius, grid, mean_kind, cfg, inf)
    return _build_report(points, mean_kind, tol, False, cfg, inf)


def check_median(field: FieldSpec, radius: RadiusSpec, grid: GridSpec,
                 mean_kind: str = "sigma", tol: float = 1e-8,
                 cfg: QuadConfig | None = None,
                 inf: InfinityPolicy = DEFAULT_POLICY) -> CheckReport:
    """Certify |mean_{x,r(x)}(f) - f(x)| <= tol at every grid point."""
    cfg = cfg or QuadConfig()
    points = grid_means(field, radius, grid, mean_kind, cfg, inf)
    return _build_report(points, mean_kind, tol, True, cfg, inf)


def reports_from_means(points: list[PointMean], mean_kind: str, tol: float,
                       cfg: QuadConfig,
                       inf: InfinityPolicy = DEFAULT_POLICY
                       ) -> tuple[CheckReport, CheckReport]:
    """Build the one-sided and two-sided reports from one mean sweep."""
    sup = _build_report(points, mean_kind, tol, False, cfg, inf)
    med = _build_report(points, mean_kind, tol, True, cfg, inf)
    return sup, med


def radius_conditions(radius: RadiusSpec, sample: GridSpec,
                      pair_samples: int = 1000,
                      seed: int = 0) -> RadiusReport:
    """Sampled estimates of sup/inf of r(x) - |x| and a Lipschitz slope.

    Slope pairs mix lattice-adjacent points (local steepness) with
    seeded random pairs (global secants).  All numbers are sampling
    evidence: the asymptotic growth conditions they probe cannot be
    decided from finitely many points.
    """
    pts = enumerate_grid(sample)
    if len(pts) == 0:
        raise ValueError("sample grid is empty")
    rvals = radius.evaluate(pts)
    norms = np.abs(pts[:, 0]) if pts.shape[1] == 1 else np.hypot(pts[:, 0], pts[:, 1])
    diff = rvals - norms

    pairs = list(neighbor_pairs(sample))
    rng = np.random.default_rng(seed)
    n = len(pts)
    if n >= 2 and pair_samples > 0:
        idx = rng.integers(0, n, size=(pair_samples, 2))
        pairs.extend((int(i), int(j)) for i, j in idx if i != j)

    lip = 0.0
    for i, j in pairs:
        gap = float(np.linalg.norm(pts[i] - pts[j]))
        if gap == 0.0:
            continue
        lip = max(lip, abs(float(rvals[i] - rvals[j])) / gap)

    return RadiusReport(sup_r_minus_abs=float(np.max(diff)),
                        inf_r_minus_abs=float(np.min(diff)),
                        lipschitz_estimate=lip,
                        samples=n)
