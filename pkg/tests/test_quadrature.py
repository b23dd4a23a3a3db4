import math

import numpy as np
import pytest

from meanlab.errors import InfiniteValue
from meanlab.quadrature import (EvalCounter, InfinityPolicy, QuadConfig,
                                adaptive_segments, apply_policy_scalar,
                                bisect_root, periodic_mean)


def test_quadconfig_validation():
    QuadConfig()  # defaults are valid
    with pytest.raises(ValueError):
        QuadConfig(abs_tol=0.0)
    with pytest.raises(ValueError):
        QuadConfig(max_subdivisions=0)
    with pytest.raises(ValueError):
        QuadConfig(initial_panels=3)
    with pytest.raises(ValueError):
        QuadConfig(initial_panels=7)


def test_periodic_mean_spectral():
    cfg = QuadConfig()
    mean, err, conv = periodic_mean(lambda t: np.cos(t) ** 2, cfg)
    assert conv and abs(mean - 0.5) < 1e-12
    mean, err, conv = periodic_mean(lambda t: np.exp(np.sin(t)), cfg)
    # modified Bessel I0(1)
    assert conv and abs(mean - 1.2660658777520084) < 1e-10


def test_periodic_mean_budget_exhaustion():
    cfg = QuadConfig(abs_tol=1e-13, max_subdivisions=1, initial_panels=4)
    g = lambda t: np.abs(np.cos(3 * t))
    mean, err, conv = periodic_mean(g, cfg)
    assert not conv
    assert err > cfg.abs_tol


def test_adaptive_segments_known_integrals():
    cfg = QuadConfig()
    val, err, conv = adaptive_segments(np.exp, [0.0, 1.0], 1e-10, cfg)
    assert conv and abs(val - (math.e - 1.0)) < 1e-9
    # kink at 0 declared as a breakpoint: |x| over [-1, 2]
    val, err, conv = adaptive_segments(np.abs, [-1.0, 0.0, 2.0], 1e-10, cfg)
    assert conv and abs(val - 2.5) < 1e-9


def test_adaptive_segments_grades_into_integrable_singularity():
    cfg = QuadConfig(max_subdivisions=48)
    g = lambda x: 1.0 / np.sqrt(np.abs(x))
    val, err, conv = adaptive_segments(g, [0.0, 1.0], 1e-8, cfg)
    assert conv
    assert abs(val - 2.0) < 1e-6


def test_adaptive_segments_reports_non_convergence():
    cfg = QuadConfig(max_subdivisions=2)
    g = lambda x: 1.0 / np.sqrt(np.abs(x))
    val, err, conv = adaptive_segments(g, [0.0, 1.0], 1e-12, cfg)
    assert not conv
    assert err > 1e-12


def test_bisect_root():
    root, lo, hi = bisect_root(lambda x: x * x - 2.0, 0.0, 2.0, 1e-12)
    assert abs(root - math.sqrt(2.0)) < 1e-11
    assert hi - lo <= 1e-12


def test_infinity_policy_scalar():
    clamp = InfinityPolicy.clamp(100.0)
    assert apply_policy_scalar(5.0, clamp) == (5.0, False)
    assert apply_policy_scalar(math.inf, clamp) == (100.0, True)
    assert apply_policy_scalar(250.0, clamp) == (100.0, True)
    err = InfinityPolicy.error()
    with pytest.raises(InfiniteValue):
        apply_policy_scalar(math.inf, err)
    with pytest.raises(InfiniteValue):
        apply_policy_scalar(-math.inf, clamp)
    with pytest.raises(ValueError):
        InfinityPolicy.clamp(math.inf)


def test_eval_counter_counts_and_clamps():
    policy = InfinityPolicy.clamp(10.0)
    raw = lambda xs: np.where(xs > 0, np.inf, 1.0)
    counter = EvalCounter(raw, policy)
    out = counter(np.array([-1.0, 1.0]))
    assert counter.evaluations == 2
    assert counter.clamped
    np.testing.assert_array_equal(out, [1.0, 10.0])

    errc = EvalCounter(raw, InfinityPolicy.error())
    with pytest.raises(InfiniteValue):
        errc(np.array([1.0]))
    with pytest.raises(InfiniteValue):
        EvalCounter(lambda xs: np.full_like(xs, np.nan), policy)(np.array([1.0]))
