import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meanlab.errors import DimensionMismatch, InfiniteValue, NoSignChange
from meanlab.exprs import (Abs, AbsPow, Add, Constant, FieldSpec, Hat,
                           IndicatorStrip, Linear, LogAbs, LogPlus, LogSuper,
                           Min, Neg, Quadratic, RPow, Scale, Shift, X1Inv)
from meanlab.means import (circle_mean, disk_mean, interval_mean, mean_value,
                           median_radius, point_sigma_1d, radial_locus_radii)
from meanlab.quadrature import InfinityPolicy, QuadConfig


# ---------------------------------------------------------------------------
# Circle means
# ---------------------------------------------------------------------------

def test_circle_mean_constant(cfg):
    res = circle_mean(FieldSpec(Constant(7.0), 2), (0.4, -1.0), 3.0, cfg)
    assert res.converged
    assert res.value == pytest.approx(7.0, abs=cfg.abs_tol)
    assert res.err_estimate <= cfg.abs_tol


def test_circle_mean_quadratic_identity(cfg):
    # mean of |y|^2 over the circle is |x|^2 + rho^2
    for center, rho in [((1.5, 2.0), 0.7), ((0.0, 0.0), 3.0), ((-2.0, 1.0), 5.5)]:
        res = circle_mean(FieldSpec(Quadratic(), 2), center, rho, cfg)
        expected = center[0] ** 2 + center[1] ** 2 + rho ** 2
        assert res.converged
        assert res.value == pytest.approx(expected, abs=5 * cfg.abs_tol)


def test_circle_mean_log_enclosing_circle(cfg):
    # mean of ln|y| over a circle enclosing the origin is ln(radius)
    res = circle_mean(FieldSpec(LogAbs(), 2), (1.0, 0.0), 2.0, cfg)
    assert res.converged
    assert res.value == pytest.approx(math.log(2.0), abs=1e-12)


@pytest.mark.parametrize("center,rho", [((0.4, 0.9), 2.0), ((3.0, -1.0), 0.5)])
def test_harmonic_mean_value_property(center, rho, cfg):
    # harmonic test functions reproduce their center value exactly
    saddle = Add(AbsPow(2.0, 1), Neg(AbsPow(2.0, 2)))
    log_shifted = Shift(LogAbs(), (8.0, 8.0))  # singular point far outside
    for expr in (Linear(1), saddle, log_shifted):
        f = FieldSpec(expr, 2)
        res = circle_mean(f, center, rho, cfg)
        assert res.converged
        assert res.value == pytest.approx(f.value_at(center), abs=cfg.abs_tol * 4)


def test_circle_mean_validates_inputs(cfg):
    with pytest.raises(DimensionMismatch):
        circle_mean(FieldSpec(Abs(), 1), (0.0,), 1.0, cfg)
    with pytest.raises(ValueError):
        circle_mean(FieldSpec(Hat(), 2), (0.0, 0.0), -1.0, cfg)
    with pytest.raises(ValueError):
        circle_mean(FieldSpec(Hat(), 2), (math.inf, 0.0), 1.0, cfg)


def test_circle_mean_non_convergence_is_flagged():
    starved = QuadConfig(abs_tol=1e-13, max_subdivisions=1, initial_panels=4)
    res = circle_mean(FieldSpec(X1Inv(), 2), (3.0, 0.0), 5.0, starved)
    assert not res.converged
    assert res.err_estimate > starved.abs_tol


def test_indicator_strip_exact_arc_fractions(cfg):
    # piecewise-constant integrand: splitting at the crossings is exact
    res = circle_mean(FieldSpec(IndicatorStrip(2.0), 2), (0.5, 0.0), 6.0, cfg)
    exact = (math.acos(-5.0 / 12.0) - math.acos(0.25)) / math.pi
    assert res.converged
    assert res.value == pytest.approx(exact, abs=1e-14)


def test_min_combinator_matches_builtin_through_quadrature(cfg):
    f1 = FieldSpec(X1Inv(), 2)
    f2 = FieldSpec(Min(Constant(1.0), AbsPow(-1.0, 1)), 2)
    for center, rho in [((3.0, 1.0), 5.0), ((0.2, 0.0), 2.0)]:
        a = circle_mean(f1, center, rho, cfg)
        b = circle_mean(f2, center, rho, cfg)
        assert a.converged and b.converged
        assert a.value == pytest.approx(b.value, abs=2 * cfg.abs_tol)


# ---------------------------------------------------------------------------
# Disk means, with the product-rule oracle (test-suite only)
# ---------------------------------------------------------------------------

def _disk_mean_oracle(field, center, rho, n_gauss=64, n_theta=4096):
    """Independent 2D product rule: Gauss-Legendre radially (split at the
    field's critical radii), trapezoid angularly."""
    center = np.asarray(center, dtype=float)
    nodes, weights = np.polynomial.legendre.leggauss(n_gauss)
    splits = sorted({s for s in radial_locus_radii(field.all_loci(), center)
                     if 0.0 < s < rho})
    edges = [0.0] + splits + [rho]
    thetas = 2.0 * math.pi * np.arange(n_theta) / n_theta
    directions = np.stack((np.cos(thetas), np.sin(thetas)), axis=1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        ss = 0.5 * (a + b) + 0.5 * (b - a) * nodes
        ws = 0.5 * (b - a) * weights
        for s, w in zip(ss, ws):
            vals = field.evaluate(center[None, :] + s * directions)
            total += w * s * float(np.mean(vals))
    return 2.0 * total / rho ** 2


def test_disk_mean_constant(cfg):
    res = disk_mean(FieldSpec(Constant(3.25), 2), (1.0, 1.0), 0.5, cfg)
    assert res.converged
    assert res.value == pytest.approx(3.25, abs=cfg.abs_tol)


def test_disk_mean_quadratic_identity(cfg):
    # mean of |y|^2 over the disk centered at the origin is rho^2 / 2
    res = disk_mean(FieldSpec(Quadratic(), 2), (0.0, 0.0), 2.0, cfg)
    assert res.converged
    assert res.value == pytest.approx(2.0, abs=5 * cfg.abs_tol)


def test_disk_mean_smooth_fields_match_oracle(cfg):
    for expr, center, rho in [(LogSuper(), (0.5, -0.3), 1.5),
                              (Quadratic(), (1.0, 2.0), 0.8)]:
        f = FieldSpec(expr, 2)
        res = disk_mean(f, center, rho, cfg)
        oracle = _disk_mean_oracle(f, center, rho)
        assert res.converged
        assert res.value == pytest.approx(oracle, abs=5 * cfg.abs_tol)


def test_disk_mean_kinked_field_matches_oracle():
    cfg = QuadConfig(abs_tol=1e-6)
    f = FieldSpec(Hat(), 2)
    res = disk_mean(f, (0.4, 0.2), 1.2, cfg)
    oracle = _disk_mean_oracle(f, (0.4, 0.2), 1.2, n_theta=8192)
    assert res.converged
    assert res.value == pytest.approx(oracle, abs=5 * cfg.abs_tol)


def test_disk_mean_rpow_small_alpha_supermedian_at_points(cfg):
    # bounded radial power with a small exponent: disk mean stays below
    # the center value at sample points with c|x| > M
    f = FieldSpec(RPow(0.05, 2.0, 1.0), 2)
    for x in [(1.0, 0.0), (0.0, 3.0), (10.0, 10.0)]:
        rho = max(2.0 * math.hypot(*x), 1.0)
        res = disk_mean(f, x, rho, cfg)
        assert res.converged
        assert res.value <= f.value_at(x) + 1e-9


# ---------------------------------------------------------------------------
# Interval means
# ---------------------------------------------------------------------------

def test_interval_mean_abs(cfg):
    res = interval_mean(FieldSpec(Abs(), 1), (0.0,), 1.0, cfg)
    assert res.converged
    assert res.value == pytest.approx(0.5, abs=cfg.abs_tol)


def test_interval_mean_zero(cfg):
    res = interval_mean(FieldSpec(Constant(0.0), 1), (3.0,), 5.0, cfg)
    assert res.converged
    assert res.value == 0.0


def test_interval_mean_logplus_closed_form(cfg):
    # (1/4) * integral_8^12 of ln(s-1) ds via the antiderivative s ln s - s
    res = interval_mean(FieldSpec(LogPlus(1.0), 1), (10.0,), 2.0, cfg)
    exact = ((11.0 * math.log(11.0) - 11.0) - (7.0 * math.log(7.0) - 7.0)) / 4.0
    assert res.converged
    assert res.value == pytest.approx(exact, abs=5 * cfg.abs_tol)


def test_interval_mean_critical_growth_closed_form(cfg):
    # with r = c0 x + M and x - r < -(M+1), the mean of ln^+(|s|-M) is
    # exactly (c0 x ln x + 1) / r when (r - M)/x lands on the root of
    # (t+1)ln(t+1)+(t-1)ln(t-1)-2t
    from meanlab.special import solve_c0
    c0 = solve_c0(1e-13).c0
    f = FieldSpec(LogPlus(1.0), 1)
    for x in (50.0, 1e4, 1e8):
        r = c0 * x + 1.0
        res = interval_mean(f, (x,), r, cfg)
        exact = (c0 * x * math.log(x) + 1.0) / r
        assert res.converged
        assert res.value == pytest.approx(exact, abs=5 * cfg.abs_tol)


def test_interval_mean_power_singularity_closed_form():
    # |s|^-alpha over [x - cx, x + cx]: the quadrature grades into the
    # integrable singularity at 0 and matches the antiderivative
    cfg = QuadConfig(max_subdivisions=48)
    c = 3.0
    for alpha in (0.119, 0.35, 0.62):
        f = FieldSpec(AbsPow(-alpha, None), 1)
        for x in (1.0, 50.0, 1e4):
            res = interval_mean(f, (x,), c * x, cfg)
            beta = 1.0 - alpha
            exact = (x ** -alpha) * ((c + 1.0) ** beta + (c - 1.0) ** beta) \
                / (2.0 * c * beta)
            assert res.converged
            assert res.value == pytest.approx(exact, rel=0, abs=1e-7)


def test_interval_mean_policy_error_vs_clamp():
    f = FieldSpec(AbsPow(-0.5, None), 1)
    clamped = interval_mean(f, (0.0,), 1.0, QuadConfig(max_subdivisions=40),
                            InfinityPolicy.clamp(1e12))
    # integral of |s|^-1/2 over [-1,1] is 4, the mean is 2
    assert clamped.value == pytest.approx(2.0, abs=1e-6)


def test_point_sigma_1d_two_point_average():
    f = FieldSpec(Abs(), 1)
    res = point_sigma_1d(f, (3.0,), 1.0)
    assert res.value == 3.0 and res.converged and res.evaluations == 2


def test_mean_value_dispatch(cfg):
    f2 = FieldSpec(Constant(2.0), 2)
    f1 = FieldSpec(Constant(2.0), 1)
    assert mean_value(f2, (0.0, 0.0), 1.0, "sigma", cfg).value == pytest.approx(2.0)
    assert mean_value(f2, (0.0, 0.0), 1.0, "lambda", cfg).value == pytest.approx(2.0)
    assert mean_value(f1, (0.0,), 1.0, "sigma", cfg).value == pytest.approx(2.0)
    assert mean_value(f1, (0.0,), 1.0, "lambda", cfg).value == pytest.approx(2.0)
    with pytest.raises(ValueError):
        mean_value(f2, (0.0, 0.0), 1.0, "volume", cfg)


# ---------------------------------------------------------------------------
# median_radius
# ---------------------------------------------------------------------------

def test_median_radius_subharmonic_has_no_root(cfg):
    with pytest.raises(NoSignChange):
        median_radius(FieldSpec(Quadratic(), 2), (0.7, 0.2), (0.1, 10.0),
                      1e-6, cfg)


def test_median_radius_against_dense_scan(cfg):
    # independent oracle: scan sigma on a fine rho grid, locate the sign
    # change, and require the solver's root to fall in that cell
    f = FieldSpec(X1Inv(), 2)
    center = (2.0, 0.0)
    f0 = f.value_at(center)
    rhos = np.linspace(0.01, 40.0, 1200)
    signs = [circle_mean(f, center, float(r), cfg).value - f0 > 0
             for r in rhos]
    flips = [i for i in range(len(signs) - 1) if signs[i] != signs[i + 1]]
    assert len(flips) == 1
    lo_cell, hi_cell = rhos[flips[0]], rhos[flips[0] + 1]

    root = median_radius(f, center, (0.01, 1000.0), 1e-9, cfg)
    assert lo_cell <= root <= hi_cell


def test_median_radius_bracket_endpoints_root(cfg):
    f = FieldSpec(Constant(1.0), 2)
    # residual is identically zero: either endpoint is a valid root
    assert median_radius(f, (0.0, 0.0), (1.0, 2.0), 1e-9, cfg) == 1.0


# ---------------------------------------------------------------------------
# Mean properties (linearity, monotonicity, constants)
# ---------------------------------------------------------------------------

_BUILTIN_POOL = [Hat(), X1Inv(), LogSuper(), Quadratic(), Abs(),
                 IndicatorStrip(1.5), RPow(0.2, 2.0, 1.0)]


@given(c=st.floats(-50, 50, allow_nan=False),
       rho=st.floats(0.1, 20.0),
       kind=st.sampled_from(["sigma", "lambda"]))
@settings(max_examples=20, deadline=None)
def test_constant_reproduction(c, rho, kind):
    cfg = QuadConfig()
    f = FieldSpec(Constant(c), 2)
    res = mean_value(f, (0.3, -0.7), rho, kind, cfg)
    assert res.converged
    assert res.value == pytest.approx(c, abs=cfg.abs_tol)


@given(i=st.integers(0, len(_BUILTIN_POOL) - 1),
       j=st.integers(0, len(_BUILTIN_POOL) - 1),
       a=st.floats(-3, 3, allow_nan=False), b=st.floats(-3, 3, allow_nan=False))
@settings(max_examples=15, deadline=None)
def test_linearity_on_builtin_pairs(i, j, a, b):
    cfg = QuadConfig()
    center, rho = (0.7, 0.4), 2.3
    f, g = _BUILTIN_POOL[i], _BUILTIN_POOL[j]
    combo = FieldSpec(Add(Scale(f, a), Scale(g, b)), 2)
    lhs = circle_mean(combo, center, rho, cfg)
    rf = circle_mean(FieldSpec(f, 2), center, rho, cfg)
    rg = circle_mean(FieldSpec(g, 2), center, rho, cfg)
    assert lhs.converged and rf.converged and rg.converged
    assert lhs.value == pytest.approx(a * rf.value + b * rg.value,
                                      abs=3 * cfg.abs_tol * (1 + abs(a) + abs(b)))


@given(i=st.integers(0, len(_BUILTIN_POOL) - 1),
       rho=st.floats(0.5, 5.0))
@settings(max_examples=15, deadline=None)
def test_monotonicity_min_below_operand(i, rho):
    # f = min(g, 0.4) <= g pointwise, verified by sampling, so the means
    # must be ordered too
    cfg = QuadConfig()
    center = (1.1, -0.2)
    g = _BUILTIN_POOL[i]
    f = Min(g, Constant(0.4))
    thetas = np.linspace(0.0, 2.0 * math.pi, 1000, endpoint=False)
    pts = np.array(center) + rho * np.stack((np.cos(thetas), np.sin(thetas)), axis=1)
    fv = FieldSpec(f, 2).evaluate(pts)
    gv = FieldSpec(g, 2).evaluate(pts)
    assert np.all(fv <= gv + 1e-15)
    rf = circle_mean(FieldSpec(f, 2), center, rho, cfg)
    rg = circle_mean(FieldSpec(g, 2), center, rho, cfg)
    assert rf.value <= rg.value + 2 * cfg.abs_tol
