"""Expression trees for scalar fields and radius functions on R^1 and R^2.

Every node evaluates vectorized on an (n, d) array of points and declares
the loci where it is non-smooth (kinks, jumps, or singularities) so that
quadrature panels can be split there.  min/max style nodes additionally
expose their operand pairs so integrators can locate switching points
numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, PositivityError


def _fmt(x: float) -> str:
    """Shortest round-trip decimal for expression strings."""
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(float(x))


# ---------------------------------------------------------------------------
# Non-smoothness loci
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SphereLocus:
    """Set |y - center| = radius (a circle in 2D, two points in 1D)."""
    center: tuple
    radius: float


@dataclass(frozen=True)
class HyperplaneLocus:
    """Set y[axis-1] = value (a vertical/horizontal line in 2D, a point in 1D)."""
    axis: int
    value: float


@dataclass(frozen=True)
class PointLocus:
    """An isolated non-smooth (possibly singular) point."""
    point: tuple


def _origin(d: int) -> tuple:
    return (0.0,) * d


# ---------------------------------------------------------------------------
# Expression nodes
# ---------------------------------------------------------------------------

class Expr:
    """Base node. Subclasses are frozen dataclasses with structural equality."""

    def evaluate(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def loci(self, d: int) -> tuple:
        return ()

    def children(self) -> tuple:
        return ()

    def max_axis(self) -> int:
        return max((c.max_axis() for c in self.children()), default=0)

    def to_expr_string(self) -> str:
        raise NotImplementedError

    def all_loci(self, d: int) -> tuple:
        out = list(self.loci(d))
        for c in self.children():
            out.extend(c.all_loci(d))
        return tuple(out)

    def switch_pairs(self) -> tuple:
        """(left, right) operand pairs of min/max style nodes in the tree."""
        out = []
        for c in self.children():
            out.extend(c.switch_pairs())
        return tuple(out)


def _norm(pts: np.ndarray) -> np.ndarray:
    if pts.shape[1] == 1:
        return np.abs(pts[:, 0])
    return np.hypot(pts[:, 0], pts[:, 1])


# -- builtins usable as fields ----------------------------------------------

@dataclass(frozen=True)
class Constant(Expr):
    v: float

    def evaluate(self, pts):
        return np.full(pts.shape[0], float(self.v))

    def to_expr_string(self):
        return f"constant(v={_fmt(self.v)})"


@dataclass(frozen=True)
class Abs(Expr):
    """|y|, the distance to the origin."""

    def evaluate(self, pts):
        return _norm(pts)

    def loci(self, d):
        return (PointLocus(_origin(d)),)

    def to_expr_string(self):
        return "abs"


@dataclass(frozen=True)
class Hat(Expr):
    """(1 - |y|)^+, a tent supported on the closed unit ball."""

    def evaluate(self, pts):
        return np.maximum(1.0 - _norm(pts), 0.0)

    def loci(self, d):
        return (SphereLocus(_origin(d), 1.0), PointLocus(_origin(d)))

    def to_expr_string(self):
        return "hat"


@dataclass(frozen=True)
class X1Inv(Expr):
    """min{1, |y1|^-1}: constant 1 on the strip |y1| <= 1, decays outside."""

    def evaluate(self, pts):
        a = np.abs(pts[:, 0])
        with np.errstate(divide="ignore"):
            return np.minimum(1.0, 1.0 / a)

    def loci(self, d):
        return (HyperplaneLocus(1, 1.0), HyperplaneLocus(1, -1.0))

    def max_axis(self):
        return 1

    def to_expr_string(self):
        return "x1inv"


@dataclass(frozen=True)
class LogSuper(Expr):
    """-ln(|y|^2 + 1), smooth and superharmonic on the plane."""

    def evaluate(self, pts):
        return -np.log1p(np.sum(pts * pts, axis=1))

    def to_expr_string(self):
        return "logsuper"


@dataclass(frozen=True)
class RPow(Expr):
    """max{c|y|, M}^(-alpha): bounded radial power with an inner plateau."""
    alpha: float
    c: float
    M: float

    def __post_init__(self):
        if self.c <= 0 or self.M <= 0:
            raise ValueError("rpow requires c > 0 and M > 0")

    def evaluate(self, pts):
        return np.maximum(self.c * _norm(pts), self.M) ** (-self.alpha)

    def loci(self, d):
        return (SphereLocus(_origin(d), self.M / self.c),)

    def to_expr_string(self):
        return f"rpow(alpha={_fmt(self.alpha)},c={_fmt(self.c)},M={_fmt(self.M)})"


@dataclass(frozen=True)
class LogPlus(Expr):
    """ln^+(|y| - M): zero up to |y| = M + 1, then ln(|y| - M)."""
    M: float

    def evaluate(self, pts):
        return np.log(np.maximum(_norm(pts) - self.M, 1.0))

    def loci(self, d):
        return (SphereLocus(_origin(d), self.M + 1.0),)

    def to_expr_string(self):
        return f"logplus(M={_fmt(self.M)})"


@dataclass(frozen=True)
class AbsPow(Expr):
    """|y|^alpha, or |y_axis|^alpha when an axis is selected (1-based)."""
    alpha: float
    axis: int | None = None

    def evaluate(self, pts):
        base = _norm(pts) if self.axis is None else np.abs(pts[:, self.axis - 1])
        with np.errstate(divide="ignore"):
            return base ** self.alpha

    def loci(self, d):
        if self.axis is None:
            return (PointLocus(_origin(d)),)
        return (HyperplaneLocus(self.axis, 0.0),)

    def max_axis(self):
        return 0 if self.axis is None else self.axis

    def to_expr_string(self):
        if self.axis is None:
            return f"abspow(alpha={_fmt(self.alpha)})"
        return f"abspow(alpha={_fmt(self.alpha)},axis={self.axis})"


@dataclass(frozen=True)
class IndicatorStrip(Expr):
    """Indicator of the strip |y1| <= a."""
    a: float

    def evaluate(self, pts):
        return (np.abs(pts[:, 0]) <= self.a).astype(float)

    def loci(self, d):
        return (HyperplaneLocus(1, self.a), HyperplaneLocus(1, -self.a))

    def max_axis(self):
        return 1

    def to_expr_string(self):
        return f"indicator_strip(a={_fmt(self.a)})"


@dataclass(frozen=True)
class Linear(Expr):
    """Coordinate function y_axis (harmonic)."""
    axis: int = 1

    def evaluate(self, pts):
        return pts[:, self.axis - 1].copy()

    def max_axis(self):
        return self.axis

    def to_expr_string(self):
        return "linear" if self.axis == 1 else f"linear(axis={self.axis})"


@dataclass(frozen=True)
class Quadratic(Expr):
    """|y|^2, smooth and strictly subharmonic."""

    def evaluate(self, pts):
        return np.sum(pts * pts, axis=1)

    def to_expr_string(self):
        return "quadratic"


@dataclass(frozen=True)
class LogAbs(Expr):
    """ln|y|, harmonic off the origin (2D); -inf at the origin."""

    def evaluate(self, pts):
        with np.errstate(divide="ignore"):
            return np.log(_norm(pts))

    def loci(self, d):
        return (PointLocus(_origin(d)),)

    def to_expr_string(self):
        return "logabs"


# -- builtins used as radius functions ---------------------------------------

@dataclass(frozen=True)
class CAbsPlusM(Expr):
    """c|y| + M."""
    c: float
    M: float

    def evaluate(self, pts):
        return self.c * _norm(pts) + self.M

    def loci(self, d):
        return (PointLocus(_origin(d)),)

    def to_expr_string(self):
        return f"cabs_plus_M(c={_fmt(self.c)},M={_fmt(self.M)})"


@dataclass(frozen=True)
class MaxCAbsM(Expr):
    """max{c|y|, M}."""
    c: float
    M: float

    def evaluate(self, pts):
        return np.maximum(self.c * _norm(pts), self.M)

    def loci(self, d):
        return (SphereLocus(_origin(d), self.M / self.c),)

    def to_expr_string(self):
        return f"max_cabs_M(c={_fmt(self.c)},M={_fmt(self.M)})"


@dataclass(frozen=True)
class ContractExample(Expr):
    """|y| + 2 + (|y| + 1)^-1: contracting but not Lipschitz below 1."""

    def evaluate(self, pts):
        r = _norm(pts)
        return r + 2.0 + 1.0 / (r + 1.0)

    def loci(self, d):
        return (PointLocus(_origin(d)),)

    def to_expr_string(self):
        return "contract_example"


@dataclass(frozen=True)
class StepExample(Expr):
    """3 on |y| < 2, otherwise 1 (discontinuous radius)."""

    def evaluate(self, pts):
        return np.where(_norm(pts) < 2.0, 3.0, 1.0)

    def loci(self, d):
        return (SphereLocus(_origin(d), 2.0),)

    def to_expr_string(self):
        return "step_example"


@dataclass(frozen=True)
class Parabolic(Expr):
    """6 max{1, y1^2}: constant along the y2-axis, quadratic growth in y1."""

    def evaluate(self, pts):
        return 6.0 * np.maximum(1.0, pts[:, 0] ** 2)

    def loci(self, d):
        return (HyperplaneLocus(1, 1.0), HyperplaneLocus(1, -1.0))

    def max_axis(self):
        return 1

    def to_expr_string(self):
        return "parabolic"


# -- combinators --------------------------------------------------------------

@dataclass(frozen=True)
class Min(Expr):
    left: Expr
    right: Expr

    def evaluate(self, pts):
        return np.minimum(self.left.evaluate(pts), self.right.evaluate(pts))

    def children(self):
        return (self.left, self.right)

    def switch_pairs(self):
        return ((self.left, self.right),) + Expr.switch_pairs(self)

    def to_expr_string(self):
        return f"min({self.left.to_expr_string()},{self.right.to_expr_string()})"


@dataclass(frozen=True)
class Max(Expr):
    left: Expr
    right: Expr

    def evaluate(self, pts):
        return np.maximum(self.left.evaluate(pts), self.right.evaluate(pts))

    def children(self):
        return (self.left, self.right)

    def switch_pairs(self):
        return ((self.left, self.right),) + Expr.switch_pairs(self)

    def to_expr_string(self):
        return f"max({self.left.to_expr_string()},{self.right.to_expr_string()})"


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def evaluate(self, pts):
        return self.left.evaluate(pts) + self.right.evaluate(pts)

    def children(self):
        return (self.left, self.right)

    def to_expr_string(self):
        return f"add({self.left.to_expr_string()},{self.right.to_expr_string()})"


@dataclass(frozen=True)
class Scale(Expr):
    child: Expr
    k: float

    def evaluate(self, pts):
        return self.k * self.child.evaluate(pts)

    def children(self):
        return (self.child,)

    def to_expr_string(self):
        return f"scale({self.child.to_expr_string()},k={_fmt(self.k)})"


@dataclass(frozen=True)
class Shift(Expr):
    """Translate the graph by +offset: (shift f)(y) = f(y - offset)."""
    child: Expr
    offset: tuple

    def evaluate(self, pts):
        off = np.asarray(self.offset, dtype=float)
        return self.child.evaluate(pts - off[None, : pts.shape[1]])

    def children(self):
        return (self.child,)

    def max_axis(self):
        return max(self.child.max_axis(), len(self.offset))

    def loci(self, d):
        return ()

    def all_loci(self, d):
        off = tuple(self.offset) + (0.0,) * (d - len(self.offset))
        out = []
        for loc in self.child.all_loci(d):
            if isinstance(loc, SphereLocus):
                c = tuple(a + b for a, b in zip(loc.center, off))
                out.append(SphereLocus(c, loc.radius))
            elif isinstance(loc, HyperplaneLocus):
                out.append(HyperplaneLocus(loc.axis, loc.value + off[loc.axis - 1]))
            else:
                p = tuple(a + b for a, b in zip(loc.point, off))
                out.append(PointLocus(p))
        return tuple(out)

    def to_expr_string(self):
        coords = [f"x0={_fmt(self.offset[0])}"]
        if len(self.offset) > 1:
            coords.append(f"y0={_fmt(self.offset[1])}")
        return f"shift({self.child.to_expr_string()},{','.join(coords)})"


@dataclass(frozen=True)
class Clamp(Expr):
    """min{f, n}: truncation from above at level n."""
    child: Expr
    n: float

    def evaluate(self, pts):
        return np.minimum(self.child.evaluate(pts), self.n)

    def children(self):
        return (self.child,)

    def switch_pairs(self):
        return ((self.child, Constant(self.n)),) + Expr.switch_pairs(self)

    def to_expr_string(self):
        return f"clamp({self.child.to_expr_string()},n={_fmt(self.n)})"


@dataclass(frozen=True)
class Neg(Expr):
    child: Expr

    def evaluate(self, pts):
        return -self.child.evaluate(pts)

    def children(self):
        return (self.child,)

    def to_expr_string(self):
        return f"neg({self.child.to_expr_string()})"


# ---------------------------------------------------------------------------
# Field and radius wrappers
# ---------------------------------------------------------------------------

def _as_points(pts, dim: int) -> np.ndarray:
    arr = np.asarray(pts, dtype=float)
    if arr.ndim == 1:
        if arr.shape[0] != dim:
            raise DimensionMismatch(
                f"point of length {arr.shape[0]} given for dimension {dim}")
        arr = arr.reshape(1, dim)
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise DimensionMismatch(
            f"expected points of shape (n, {dim}), got {arr.shape}")
    return arr


@dataclass(frozen=True)
class FieldSpec:
    """A scalar function on R^d given by an expression tree."""
    root: Expr
    dim: int

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise DimensionMismatch(f"dimension must be 1 or 2, got {self.dim}")
        if self.root.max_axis() > self.dim:
            raise DimensionMismatch(
                f"expression references axis {self.root.max_axis()} "
                f"but dimension is {self.dim}")

    def evaluate(self, pts) -> np.ndarray:
        return self.root.evaluate(_as_points(pts, self.dim))

    def value_at(self, point) -> float:
        return float(self.evaluate(point)[0])

    def all_loci(self) -> tuple:
        return self.root.all_loci(self.dim)

    def switch_pairs(self) -> tuple:
        return self.root.switch_pairs()

    def expr_string(self) -> str:
        return self.root.to_expr_string()


@dataclass(frozen=True)
class RadiusSpec:
    """A strictly positive radius function on R^d."""
    root: Expr
    dim: int

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise DimensionMismatch(f"dimension must be 1 or 2, got {self.dim}")
        if self.root.max_axis() > self.dim:
            raise DimensionMismatch(
                f"expression references axis {self.root.max_axis()} "
                f"but dimension is {self.dim}")

    def evaluate(self, pts) -> np.ndarray:
        arr = _as_points(pts, self.dim)
        vals = self.root.evaluate(arr)
        bad = ~(vals > 0) | ~np.isfinite(vals)
        if np.any(bad):
            i = int(np.argmax(bad))
            raise PositivityError(
                f"radius {self.expr_string()} evaluated to {vals[i]} "
                f"at {tuple(arr[i])}")
        return vals

    def value_at(self, point) -> float:
        return float(self.evaluate(point)[0])

    def expr_string(self) -> str:
        return self.root.to_expr_string()


# Registries used by the mini-language parser; each entry maps the public
# name to (constructor, required keys, optional keys with defaults).

FIELD_BUILTINS = {
    "constant": (Constant, ("v",), {}),
    "abs": (Abs, (), {}),
    "hat": (Hat, (), {}),
    "x1inv": (X1Inv, (), {}),
    "logsuper": (LogSuper, (), {}),
    "rpow": (RPow, ("alpha", "c", "M"), {}),
    "logplus": (LogPlus, ("M",), {}),
    "abspow": (AbsPow, ("alpha",), {"axis": None}),
    "indicator_strip": (IndicatorStrip, ("a",), {}),
    "linear": (Linear, (), {"axis": 1}),
    "quadratic": (Quadratic, (), {}),
    "logabs": (LogAbs, (), {}),
}

RADIUS_BUILTINS = {
    "constant": (Constant, ("v",), {}),
    "abs": (Abs, (), {}),
    "cabs_plus_M": (CAbsPlusM, ("c", "M"), {}),
    "max_cabs_M": (MaxCAbsM, ("c", "M"), {}),
    "contract_example": (ContractExample, (), {}),
    "step_example": (StepExample, (), {}),
    "parabolic": (Parabolic, (), {}),
}
