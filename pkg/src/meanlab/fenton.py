"""Outward propagation profiles along rays of the unit circle.

Starting from the constant profile r(0), each step moves every ray point
outward by the radius evaluated there:

    alpha_new(u) = alpha(u) + r(alpha(u) u),   u on the unit circle.

Since r is strictly positive the profile increases strictly; the trace
records profiles until the minimum over angles clears a target level.
Angles are independent, so discretization only limits angular coverage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .exprs import RadiusSpec


@dataclass(frozen=True)
class CircleProfile:
    angles: np.ndarray
    alphas: np.ndarray
    iteration: int

    def min_alpha(self) -> float:
        return float(np.min(self.alphas))


@dataclass(frozen=True)
class FentonTrace:
    n_stop: int
    profiles: list[CircleProfile]
    cleared: bool

    @property
    def final(self) -> CircleProfile:
        return self.profiles[-1]


def fenton_init(radius: RadiusSpec, n_angles: int) -> CircleProfile:
    """Iteration 0: every ray starts at r(origin)."""
    if n_angles < 4:
        raise ValueError("n_angles must be >= 4")
    if radius.dim != 2:
        raise DimensionMismatch("propagation runs on the unit circle in 2D")
    angles = 2.0 * math.pi * np.arange(n_angles) / n_angles
    r0 = radius.value_at((0.0, 0.0))
    return CircleProfile(angles=angles, alphas=np.full(n_angles, r0),
                         iteration=0)


def fenton_step(profile: CircleProfile, radius: RadiusSpec) -> CircleProfile:
    """One outward move of every ray point."""
    pts = profile.alphas[:, None] * np.column_stack(
        (np.cos(profile.angles), np.sin(profile.angles)))
    new_alphas = profile.alphas + radius.evaluate(pts)
    return CircleProfile(angles=profile.angles, alphas=new_alphas,
                         iteration=profile.iteration + 1)


def fenton_trace(radius: RadiusSpec, target_M: float, n_angles: int = 720,
                 max_iter: int = 100000) -> FentonTrace:
    """Iterate until min over angles exceeds target_M, or the budget ends.

    ``cleared`` reports only what was observed; a trace that ran out of
    iterations never claims clearance.
    """
    if not target_M > 0:
        raise ValueError("target_M must be positive")
    profile = fenton_init(radius, n_angles)
    profiles = [profile]
    while profile.min_alpha() <= target_M and profile.iteration < max_iter:
        profile = fenton_step(profile, radius)
        profiles.append(profile)
    cleared = profile.min_alpha() > target_M
    return FentonTrace(n_stop=profile.iteration, profiles=profiles,
                       cleared=cleared)
