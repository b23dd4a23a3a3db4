import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meanlab.errors import DimensionMismatch, PositivityError
from meanlab.exprs import (Abs, AbsPow, Add, CAbsPlusM, Clamp, Constant,
                           ContractExample, FieldSpec, Hat, HyperplaneLocus,
                           IndicatorStrip, Linear, LogAbs, LogPlus, LogSuper,
                           Max, MaxCAbsM, Min, Neg, Parabolic, PointLocus,
                           Quadratic, RadiusSpec, RPow, Scale, Shift,
                           SphereLocus, StepExample, X1Inv)


def val(expr, point, dim=2):
    return FieldSpec(expr, dim).value_at(point)


def test_builtin_values_2d():
    assert val(Constant(7.5), (3.0, -2.0)) == 7.5
    assert val(Abs(), (3.0, 4.0)) == 5.0
    assert val(Hat(), (0.25, 0.0)) == 0.75
    assert val(Hat(), (2.0, 1.0)) == 0.0
    assert val(X1Inv(), (0.5, 9.0)) == 1.0
    assert val(X1Inv(), (4.0, -1.0)) == 0.25
    assert val(LogSuper(), (1.0, 0.0)) == pytest.approx(-math.log(2.0))
    assert val(Quadratic(), (3.0, 4.0)) == 25.0
    assert val(Linear(2), (3.0, 4.0)) == 4.0
    assert val(LogAbs(), (math.e, 0.0)) == pytest.approx(1.0)
    assert val(IndicatorStrip(2.0), (1.9, 50.0)) == 1.0
    assert val(IndicatorStrip(2.0), (2.1, 0.0)) == 0.0


def test_rpow_matches_min_form():
    # max{c|y|, M}^(-a) = min{(c|y|)^(-a), M^(-a)}
    expr = RPow(0.3, 2.0, 1.0)
    for p in [(0.1, 0.2), (0.5, 0.0), (3.0, -4.0)]:
        r = math.hypot(*p)
        expected = min((2.0 * r) ** -0.3 if r > 0 else math.inf, 1.0)
        assert val(expr, p) == pytest.approx(expected)


def test_logplus_zero_inside_and_log_outside():
    expr = LogPlus(1.0)
    assert val(expr, (0.0, 0.0)) == 0.0
    assert val(expr, (1.5, 0.0)) == 0.0
    assert val(expr, (3.0, 0.0)) == pytest.approx(math.log(2.0))


def test_radius_builtins():
    assert RadiusSpec(CAbsPlusM(2.0, 1.0), 2).value_at((3.0, 4.0)) == 11.0
    assert RadiusSpec(MaxCAbsM(2.0, 5.0), 2).value_at((1.0, 0.0)) == 5.0
    assert RadiusSpec(ContractExample(), 2).value_at((0.0, 0.0)) == 3.0
    assert RadiusSpec(StepExample(), 2).value_at((1.0, 0.0)) == 3.0
    assert RadiusSpec(StepExample(), 2).value_at((5.0, 0.0)) == 1.0
    assert RadiusSpec(Parabolic(), 2).value_at((0.5, 7.0)) == 6.0
    assert RadiusSpec(Parabolic(), 2).value_at((2.0, 0.0)) == 24.0


def test_combinators():
    f = Add(Scale(Abs(), 0.5), Constant(1.0))
    assert val(f, (6.0, 8.0)) == 6.0
    assert val(Min(Constant(2.0), Quadratic()), (1.0, 0.0)) == 1.0
    assert val(Max(Constant(2.0), Quadratic()), (1.0, 0.0)) == 2.0
    assert val(Neg(Linear(1)), (3.0, 0.0)) == -3.0
    assert val(Clamp(Quadratic(), 2.0), (5.0, 0.0)) == 2.0
    # shift moves the graph: (shift f)(y) = f(y - offset)
    assert val(Shift(Hat(), (2.0, 0.0)), (2.0, 0.0)) == 1.0
    assert val(Shift(Hat(), (2.0, 0.0)), (0.0, 0.0)) == 0.0


def test_x1inv_equals_min_combinator_pointwise():
    pts = np.array([[0.3, 1.0], [-0.9, 2.0], [1.0, 0.0], [4.0, -2.0],
                    [-7.0, 0.1]])
    builtin = FieldSpec(X1Inv(), 2).evaluate(pts)
    combo = FieldSpec(Min(Constant(1.0), AbsPow(-1.0, 1)), 2).evaluate(pts)
    np.testing.assert_allclose(builtin, combo, rtol=0, atol=0)


def test_one_dimensional_evaluation():
    f = FieldSpec(LogPlus(1.0), 1)
    assert f.value_at((10.0,)) == pytest.approx(math.log(9.0))
    r = RadiusSpec(MaxCAbsM(3.0, 1.0), 1)
    assert r.value_at((2.0,)) == 6.0


def test_dimension_validation():
    with pytest.raises(DimensionMismatch):
        FieldSpec(Linear(2), 1)
    with pytest.raises(DimensionMismatch):
        FieldSpec(Hat(), 3)
    f = FieldSpec(Hat(), 2)
    with pytest.raises(DimensionMismatch):
        f.evaluate(np.zeros((4, 1)))


def test_radius_positivity_enforced():
    r = RadiusSpec(Add(Constant(-5.0), Abs()), 2)
    with pytest.raises(PositivityError):
        r.evaluate(np.array([[1.0, 0.0]]))
    # fine where |y| > 5
    assert r.value_at((6.0, 0.0)) == 1.0


def test_loci_declarations():
    assert SphereLocus((0.0, 0.0), 1.0) in FieldSpec(Hat(), 2).all_loci()
    strip_loci = FieldSpec(IndicatorStrip(2.0), 2).all_loci()
    assert HyperplaneLocus(1, 2.0) in strip_loci
    assert HyperplaneLocus(1, -2.0) in strip_loci
    assert PointLocus((0.0, 0.0)) in FieldSpec(LogAbs(), 2).all_loci()
    assert SphereLocus((0.0, 0.0), 0.5) in FieldSpec(RPow(0.1, 2.0, 1.0), 2).all_loci()


def test_shift_translates_loci():
    f = FieldSpec(Shift(Hat(), (3.0, -1.0)), 2)
    assert SphereLocus((3.0, -1.0), 1.0) in f.all_loci()
    assert PointLocus((3.0, -1.0)) in f.all_loci()
    g = FieldSpec(Shift(IndicatorStrip(1.0), (2.0,)), 2)
    assert HyperplaneLocus(1, 3.0) in g.all_loci()


def test_switch_pairs_collected():
    f = FieldSpec(Min(Constant(1.0), AbsPow(-1.0, 1)), 2)
    assert len(f.switch_pairs()) == 1
    g = FieldSpec(Clamp(Quadratic(), 3.0), 2)
    assert len(g.switch_pairs()) == 1
    assert not FieldSpec(X1Inv(), 2).switch_pairs()


@given(k=st.floats(-10, 10, allow_nan=False), x=st.floats(-5, 5),
       y=st.floats(-5, 5))
@settings(max_examples=50)
def test_scale_add_algebra(k, x, y):
    base = FieldSpec(Quadratic(), 2)
    scaled = FieldSpec(Scale(Quadratic(), k), 2)
    summed = FieldSpec(Add(Quadratic(), Constant(1.5)), 2)
    assert scaled.value_at((x, y)) == pytest.approx(k * base.value_at((x, y)))
    assert summed.value_at((x, y)) == pytest.approx(base.value_at((x, y)) + 1.5)


@given(x=st.floats(-100, 100), y=st.floats(-100, 100))
@settings(max_examples=50)
def test_contract_example_is_strictly_contracting(x, y):
    r = RadiusSpec(ContractExample(), 2)
    p, q = (x, y), (y + 1.0, x - 1.0)
    gap = math.hypot(p[0] - q[0], p[1] - q[1])
    if gap > 0:
        assert abs(r.value_at(p) - r.value_at(q)) < gap
