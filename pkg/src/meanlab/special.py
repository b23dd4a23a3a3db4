"""Special functions behind the critical constants.

* ``psi(t) = (t+1)ln(t+1) + (t-1)ln(t-1) - 2t`` on (1, oo); its unique root
  c0 in (1, oo) separates the interval-mean Liouville regime from the
  counterexample regime on the line.  psi decreases on (1, sqrt(2)) and
  increases on (sqrt(2), oo); the limit at 1 is 2 ln 2 - 2.
* ``big_psi(beta) = (c+1)^beta + (c-1)^beta - 2 beta c`` vanishes at beta=1
  with slope psi(c); its root in (0,1) yields the 1D exponent threshold.
* ``I_integral(alpha) = (1/2pi) int |1 + c e^it|^-alpha dt`` has I(0)=1 and
  I'(0) = -ln c; its unit-level crossing yields the 2D exponent threshold.
* ``tilde_m`` locates the cutoff above which the 1D critical-growth margin
  M ln(x-M) + c0 x ln((x-M)/x) - 1 stays positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonConvergenceError, ScanExhausted
from .quadrature import QuadConfig, bisect_root, periodic_mean

PSI_LIMIT_AT_ONE = 2.0 * math.log(2.0) - 2.0
PSI_MIN_LOCATION = math.sqrt(2.0)


@dataclass(frozen=True)
class Threshold:
    """A critical exponent, or the explicit statement that none exists
    below the searched ceiling."""
    value: float | None
    bracket: tuple[float, float] | None
    residual: float | None
    unbounded: bool = False

    def __post_init__(self):
        if self.unbounded == (self.value is not None):
            raise ValueError("exactly one of value / unbounded must be set")

    @classmethod
    def unbounded_up_to(cls, ceiling: float, residual: float) -> "Threshold":
        return cls(value=None, bracket=(0.0, ceiling), residual=residual,
                   unbounded=True)


@dataclass(frozen=True)
class CriticalConstants:
    c0: float
    psi_min_location: float
    psi_limit_at_1: float


def psi(t: float) -> float:
    """(t+1)ln(t+1) + (t-1)ln(t-1) - 2t for t > 1.

    The (t-1)ln(t-1) term tends to 0 as t -> 1+; plain evaluation underflows
    harmlessly to 0 for t-1 down to the smallest subnormal.
    """
    t = float(t)
    if not t > 1.0:
        raise DomainError(f"psi requires t > 1, got {t}")
    u = t - 1.0
    return (t + 1.0) * math.log(t + 1.0) + u * math.log(u) - 2.0 * t


def psi_prime(t: float) -> float:
    """ln(t^2 - 1), computed as ln(t+1) + ln(t-1) for stability near 1."""
    t = float(t)
    if not t > 1.0:
        raise DomainError(f"psi_prime requires t > 1, got {t}")
    return math.log(t + 1.0) + math.log(t - 1.0)


def solve_c0(tol: float = 1e-12) -> CriticalConstants:
    """Root of psi in (1, oo) by bisection on [sqrt(2), 10].

    psi(sqrt 2) < 0 < psi(10) and psi increases on (sqrt 2, oo), so the
    bracket is valid; the result lies in (2.50, 2.51).
    """
    if not (tol > 0):
        raise DomainError("tol must be positive")
    root, _, _ = bisect_root(psi, PSI_MIN_LOCATION, 10.0, tol)
    return CriticalConstants(c0=root, psi_min_location=PSI_MIN_LOCATION,
                             psi_limit_at_1=PSI_LIMIT_AT_ONE)


def big_psi(beta: float, c: float) -> float:
    """(c+1)^beta + (c-1)^beta - 2 beta c for beta > 0, c > 1."""
    beta, c = float(beta), float(c)
    if not beta > 0:
        raise DomainError(f"big_psi requires beta > 0, got {beta}")
    if not c > 1:
        raise DomainError(f"big_psi requires c > 1, got {c}")
    return (c + 1.0) ** beta + (c - 1.0) ** beta - 2.0 * beta * c


def I_integral(alpha: float, c: float, cfg: QuadConfig | None = None) -> float:
    """Mean of |1 + c e^it|^-alpha over the circle, for c > 1.

    The integrand is smooth and periodic (c > 1 keeps it away from zero),
    so trapezoid doubling converges spectrally.  alpha may be any real;
    negative values are needed for central differences at alpha = 0.
    """
    alpha, c = float(alpha), float(c)
    if not c > 1:
        raise DomainError(f"I_integral requires c > 1, got {c}")
    if alpha == 0.0:
        return 1.0
    cfg = cfg or QuadConfig()

    def integrand(ts: np.ndarray) -> np.ndarray:
        return (1.0 + 2.0 * c * np.cos(ts) + c * c) ** (-0.5 * alpha)

    value, err, converged = periodic_mean(integrand, cfg)
    if not converged:
        raise NonConvergenceError(
            f"I({alpha}, c={c}) did not reach {cfg.abs_tol} "
            f"(last change {err:.3e})")
    return value


def alpha_star_2d(c: float, alpha_max: float = 50.0, tol: float = 1e-10,
                  cfg: QuadConfig | None = None) -> Threshold:
    """sup of the exponents alpha in (0, alpha_max] with I(alpha) < 1.

    I is convex with I(0) = 1 and I'(0) = -ln c < 0, so either
    I(alpha_max) < 1 (threshold unbounded below the ceiling; the case
    c >= 2, where the integrand never exceeds 1) or I crosses the unit
    level exactly once and bisection finds the crossing.
    """
    c = float(c)
    if not c > 1:
        raise DomainError(f"alpha_star_2d requires c > 1, got {c}")
    if not alpha_max > 0:
        raise DomainError("alpha_max must be positive")
    cfg = cfg or QuadConfig()

    def g(alpha: float) -> float:
        return I_integral(alpha, c, cfg) - 1.0

    g_top = g(alpha_max)
    if g_top < 0:
        return Threshold.unbounded_up_to(alpha_max, g_top)

    lo = min(1.0, alpha_max) / 2.0
    while g(lo) >= 0:
        lo /= 2.0
        if lo < 1e-300:
            raise DomainError("no exponent with mean below 1 found; c <= 1?")
    root, blo, bhi = bisect_root(g, lo, alpha_max, tol)
    return Threshold(value=root, bracket=(blo, bhi), residual=g(root))


def alpha_star_1d(c: float, tol: float = 1e-10) -> Threshold:
    """sup of the exponents alpha in (0, 1) with big_psi(1 - alpha) < 0.

    Exists exactly when c exceeds the critical constant c0: then
    big_psi is negative just left of 1 (slope psi(c) > 0 at the root
    beta = 1) while big_psi -> 2 at 0, so there is a unique crossing.
    """
    c = float(c)
    constants = solve_c0(1e-13)
    if not c > constants.c0:
        raise DomainError(
            f"alpha_star_1d requires c > c0 = {constants.c0:.12f}, got {c}; "
            "at or below c0 the interval-mean property forces constancy "
            "and no exponent threshold exists")

    eps = 0.5
    while big_psi(1.0 - eps, c) >= 0:
        eps /= 2.0
        if eps < 1e-14:
            raise DomainError(
                f"c = {c} is too close to c0 to resolve a threshold in "
                "double precision")
    beta_lo = 1.0 - eps
    while big_psi(beta_lo, c) < 0:
        beta_lo /= 2.0
        if beta_lo < 1e-300:
            raise DomainError("no positive value of big_psi found near 0")

    root, blo, bhi = bisect_root(lambda b: big_psi(b, c), beta_lo,
                                 1.0 - eps, tol)
    return Threshold(value=1.0 - root, bracket=(1.0 - bhi, 1.0 - blo),
                     residual=big_psi(root, c))


def tilde_m_margin(x: float, c0: float, M: float) -> float:
    """M ln(x - M) + c0 x ln((x - M)/x) - 1, the 1D critical-growth margin."""
    if x <= M:
        raise DomainError(f"margin needs x > M, got x={x}, M={M}")
    return M * math.log(x - M) + c0 * x * math.log1p(-M / x) - 1.0


def tilde_m(c0: float, M: float, tol: float = 1e-9,
            ceiling: float = 1e10) -> float:
    """Smallest cutoff >= 1 + c0 + 2M beyond which the margin stays positive.

    The margin g(x) = M ln(x-M) + c0 x ln((x-M)/x) - 1 increases to +oo
    (the middle term is bounded, tending to -c0 M), so a geometric scan
    from the floor finds the last sign change and bisection pins the root.
    """
    if not M > 0:
        raise DomainError(f"M must be positive, got {M}")
    floor = 1.0 + c0 + 2.0 * M

    def g(x: float) -> float:
        return tilde_m_margin(x, c0, M)

    if g(floor) > 0:
        return floor
    x_neg, x = floor, floor
    while True:
        x *= 1.5
        if x > ceiling:
            raise ScanExhausted(
                f"margin never became positive below {ceiling:g}")
        if g(x) > 0:
            break
        x_neg = x
    _, _, hi = bisect_root(g, x_neg, x, tol)
    return max(hi, floor)
