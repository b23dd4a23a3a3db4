"""Sampling grids: cartesian boxes, polar shells, and 1D lines.

Enumeration order is deterministic (lexicographic in lattice indices) so
that reports built from grid sweeps are reproducible byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch


@dataclass(frozen=True)
class CartesianGrid:
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    n_per_axis: int

    def __post_init__(self):
        if self.n_per_axis < 1:
            raise ValueError("n_per_axis must be >= 1")
        for lo, hi in (self.x_range, self.y_range):
            if not lo <= hi:
                raise ValueError(f"bounds must be ordered, got ({lo}, {hi})")


@dataclass(frozen=True)
class PolarGrid:
    r_min: float
    r_max: float
    n_radial: int
    n_angular: int
    log_spacing: bool = True

    def __post_init__(self):
        if self.n_radial < 1 or self.n_angular < 1:
            raise ValueError("grid counts must be >= 1")
        if not 0 < self.r_min <= self.r_max:
            raise ValueError("need 0 < r_min <= r_max")


@dataclass(frozen=True)
class LineGrid:
    lo: float
    hi: float
    n: int
    log_spacing: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.lo <= self.hi:
            raise ValueError(f"bounds must be ordered, got ({self.lo}, {self.hi})")
        if self.log_spacing and self.lo <= 0:
            raise ValueError("log spacing needs lo > 0")


GridSpec = CartesianGrid | PolarGrid | LineGrid


def grid_dim(grid: GridSpec) -> int:
    return 1 if isinstance(grid, LineGrid) else 2


def _spaced(lo: float, hi: float, n: int, log: bool) -> np.ndarray:
    if n == 1:
        return np.array([lo])
    if log:
        return np.geomspace(lo, hi, n)
    return np.linspace(lo, hi, n)


def enumerate_grid(grid: GridSpec) -> np.ndarray:
    """All grid points as an (n, d) array in deterministic order."""
    if isinstance(grid, LineGrid):
        return _spaced(grid.lo, grid.hi, grid.n, grid.log_spacing)[:, None]
    if isinstance(grid, CartesianGrid):
        xs = _spaced(*grid.x_range, grid.n_per_axis, False)
        ys = _spaced(*grid.y_range, grid.n_per_axis, False)
        xx, yy = np.meshgrid(xs, ys, indexing="ij")
        return np.column_stack((xx.ravel(), yy.ravel()))
    if isinstance(grid, PolarGrid):
        radii = _spaced(grid.r_min, grid.r_max, grid.n_radial, grid.log_spacing)
        thetas = 2.0 * math.pi * np.arange(grid.n_angular) / grid.n_angular
        rr = np.repeat(radii, grid.n_angular)
        tt = np.tile(thetas, grid.n_radial)
        return np.column_stack((rr * np.cos(tt), rr * np.sin(tt)))
    raise DimensionMismatch(f"unknown grid type {type(grid).__name__}")


def neighbor_pairs(grid: GridSpec) -> list[tuple[int, int]]:
    """Index pairs of lattice-adjacent grid points (for slope estimates)."""
    pairs: list[tuple[int, int]] = []
    if isinstance(grid, LineGrid):
        pairs.extend((i, i + 1) for i in range(grid.n - 1))
    elif isinstance(grid, CartesianGrid):
        n = grid.n_per_axis
        for i in range(n):
            for j in range(n):
                k = i * n + j
                if j + 1 < n:
                    pairs.append((k, k + 1))
                if i + 1 < n:
                    pairs.append((k, k + n))
    elif isinstance(grid, PolarGrid):
        nr, na = grid.n_radial, grid.n_angular
        for i in range(nr):
            for j in range(na):
                k = i * na + j
                if na > 1:
                    pairs.append((k, i * na + (j + 1) % na))
                if i + 1 < nr:
                    pairs.append((k, k + na))
    return pairs
