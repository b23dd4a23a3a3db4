"""Named, parameterized, runnable scenarios.

Each scenario bundles a field, a radius function, a default grid, and the
expected certification outcomes, so the interesting constructions (tent
fields with contracting or discontinuous radii, bounded fields with
quadratically growing radii, radial power counterexamples in 1D and 2D,
and the critical-growth interval-mean regime) can be re-run and checked
with one call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidOverride, NoSignChange, UnknownScenario
from .exprs import (CAbsPlusM, ContractExample, FieldSpec, Hat,
                    IndicatorStrip, LogPlus, MaxCAbsM, Parabolic, RadiusSpec,
                    RPow, StepExample, X1Inv)
from .grids import LineGrid, PolarGrid
from .means import circle_mean, median_radius
from .properties import (CheckReport, grid_means, radius_conditions,
                         reports_from_means)
from .quadrature import DEFAULT_POLICY, QuadConfig
from .special import alpha_star_1d, alpha_star_2d, solve_c0, tilde_m, tilde_m_margin


# ---------------------------------------------------------------------------
# Auxiliary computations shared with the CLI
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StripBoundEntry:
    t: float
    point: tuple
    half_width: float
    radius: float
    sigma_strip: float
    bound: float
    within_bound: bool
    converged: bool


def strip_bound_check(t_values, cfg: QuadConfig | None = None,
                      tol: float = 1e-6) -> list[StripBoundEntry]:
    """Circle mean of the strip indicator against the geometric bound.

    At x = (t, 0) with half width a = max{t, 1} and radius 6 max{1, t^2},
    the average of the indicator of {|y1| <= 2a} must stay below 1/(2a).
    Unconverged quadrature is surfaced via ``converged``.
    """
    cfg = cfg or QuadConfig()
    out = []
    for t in t_values:
        t = float(t)
        if t <= 0:
            raise ValueError("t values must be positive")
        a = max(t, 1.0)
        radius = 6.0 * max(1.0, t * t)
        field = FieldSpec(IndicatorStrip(2.0 * a), 2)
        res = circle_mean(field, (t, 0.0), radius, cfg)
        bound = 0.5 / a
        out.append(StripBoundEntry(
            t=t, point=(t, 0.0), half_width=2.0 * a, radius=radius,
            sigma_strip=res.value, bound=bound,
            within_bound=res.converged and res.value <= bound + tol,
            converged=res.converged))
    return out


@dataclass(frozen=True)
class AsymptoticEntry:
    t: float
    rho_star: float | None
    ratio: float | None
    error: str | None = None


def optimal_asymptotic(t_values, cfg: QuadConfig | None = None,
                       rel_tol: float = 1e-7) -> list[AsymptoticEntry]:
    """Median radius of min{1, |y1|^-1} at (t, 0), scaled by t ln t.

    The scaled ratios drift toward 2/pi as t grows (the drift is
    logarithmically slow).  Bracket failures are reported per entry
    instead of being skipped.
    """
    cfg = cfg or QuadConfig()
    field = FieldSpec(X1Inv(), 2)
    out = []
    for t in t_values:
        t = float(t)
        scale = t * math.log(t) if t > 1 else 1.0
        lo, hi = 2.0, max(8.0, scale)
        try:
            f0 = field.value_at((t, 0.0))
            # expand hi until the circle mean drops below the center value
            while circle_mean(field, (t, 0.0), hi, cfg).value > f0:
                hi *= 2.0
                if hi > 1e6 * scale:
                    raise NoSignChange("no upper bracket found")
            rho = median_radius(field, (t, 0.0), (lo, hi),
                                tol=rel_tol * hi, cfg=cfg)
            out.append(AsymptoticEntry(t=t, rho_star=rho,
                                       ratio=rho / scale))
        except NoSignChange as exc:
            out.append(AsymptoticEntry(t=t, rho_star=None, ratio=None,
                                       error=str(exc)))
    return out


# ---------------------------------------------------------------------------
# Scenario machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Expected:
    supermedian_holds: bool
    median_holds: bool
    notes: str
    extras: tuple[tuple[str, bool], ...] = ()

    def as_mapping(self) -> dict:
        return {"supermedian_holds": self.supermedian_holds,
                "median_holds": self.median_holds,
                **dict(self.extras)}


@dataclass(frozen=True)
class Scenario:
    name: str
    dimension: int
    mean_kind: str
    summary: str
    defaults: tuple[tuple[str, object], ...]
    expected: Expected


@dataclass
class ScenarioReport:
    name: str
    parameters: dict
    supermedian: CheckReport
    median: CheckReport
    aux: dict
    outcomes: dict
    expected: dict
    passed: bool
    notes: str


class _Entry:
    def __init__(self, scenario: Scenario, build, extras=None):
        self.scenario = scenario
        self.build = build
        self.extras = extras


_REGISTRY: dict[str, _Entry] = {}


def _register(scenario: Scenario, build, extras=None) -> None:
    if scenario.name in _REGISTRY:
        raise ValueError(f"duplicate scenario name {scenario.name!r}")
    _REGISTRY[scenario.name] = _Entry(scenario, build, extras)


def list_scenarios() -> list[Scenario]:
    """All registered scenarios, in registration order."""
    return [entry.scenario for entry in _REGISTRY.values()]


def get_scenario(name: str) -> Scenario:
    if name not in _REGISTRY:
        raise UnknownScenario(
            f"unknown scenario {name!r}; known: {', '.join(_REGISTRY)}")
    return _REGISTRY[name].scenario


def _coerce(name: str, default, value):
    if isinstance(default, bool):
        if isinstance(value, bool):
            return value
        if isinstance(value, str) and value.lower() in ("true", "false"):
            return value.lower() == "true"
        raise InvalidOverride(f"parameter {name} expects a boolean")
    if isinstance(default, int) and not isinstance(default, bool):
        try:
            fval = float(value)
        except (TypeError, ValueError):
            raise InvalidOverride(f"parameter {name} expects an integer")
        if fval != int(fval):
            raise InvalidOverride(f"parameter {name} expects an integer")
        return int(fval)
    if isinstance(default, float) or default is None:
        try:
            return float(value)
        except (TypeError, ValueError):
            raise InvalidOverride(f"parameter {name} expects a number")
    if isinstance(default, str):
        if not isinstance(value, str):
            raise InvalidOverride(f"parameter {name} expects a string")
        return value
    raise InvalidOverride(f"parameter {name} has unsupported type")


def run_scenario(name: str, overrides: dict | None = None,
                 cfg: QuadConfig | None = None) -> ScenarioReport:
    """Execute a scenario's checks and compare against its expectations."""
    if name not in _REGISTRY:
        raise UnknownScenario(
            f"unknown scenario {name!r}; known: {', '.join(_REGISTRY)}")
    entry = _REGISTRY[name]
    cfg = cfg or QuadConfig()
    params = dict(entry.scenario.defaults)
    for key, value in (overrides or {}).items():
        if key not in params:
            raise InvalidOverride(
                f"unknown parameter {key!r} for scenario {name!r}; "
                f"known: {', '.join(params)}")
        params[key] = _coerce(key, params[key], value)

    field, radius, grid, aux = entry.build(params, cfg)
    points = grid_means(field, radius, grid, entry.scenario.mean_kind,
                        cfg, DEFAULT_POLICY)
    sup, med = reports_from_means(points, entry.scenario.mean_kind,
                                  params["tol"], cfg)
    outcomes = {"supermedian_holds": sup.passed,
                "median_holds": med.passed}
    if entry.extras is not None:
        extra_aux, extra_outcomes = entry.extras(
            params, cfg, field, radius, grid, points)
        aux.update(extra_aux)
        outcomes.update(extra_outcomes)

    expected = entry.scenario.expected.as_mapping()
    passed = all(outcomes.get(k) == v for k, v in expected.items())
    return ScenarioReport(name=name, parameters=params, supermedian=sup,
                          median=med, aux=aux, outcomes=outcomes,
                          expected=expected, passed=passed,
                          notes=entry.scenario.expected.notes)


# ---------------------------------------------------------------------------
# Scenario definitions
# ---------------------------------------------------------------------------

def _polar(params) -> PolarGrid:
    return PolarGrid(r_min=params["r_min"], r_max=params["r_max"],
                     n_radial=params["n_radial"],
                     n_angular=params["n_angular"], log_spacing=True)


def _random_plane_pairs(rng, n_pairs: int, r_lo: float, r_hi: float):
    radii = np.exp(rng.uniform(math.log(r_lo), math.log(r_hi), size=2 * n_pairs))
    angles = rng.uniform(0.0, 2.0 * math.pi, size=2 * n_pairs)
    pts = np.column_stack((radii * np.cos(angles), radii * np.sin(angles)))
    return pts[:n_pairs], pts[n_pairs:]


# -- remark-contracting -------------------------------------------------------

def _build_contracting(params, cfg):
    field = FieldSpec(Hat(), 2)
    radius = RadiusSpec(ContractExample(), 2)
    return field, radius, _polar(params), {}


def _extras_contracting(params, cfg, field, radius, grid, points):
    max_abs_mean = max(abs(pm.mean.value) for pm in points)
    rng = np.random.default_rng(int(params["seed"]))
    xs, ys = _random_plane_pairs(rng, int(params["pair_samples"]),
                                 params["r_min"], params["r_max"])
    rx = radius.evaluate(xs)
    ry = radius.evaluate(ys)
    gaps = np.linalg.norm(xs - ys, axis=1)
    keep = gaps > 0
    strict = bool(np.all(np.abs(rx - ry)[keep] < gaps[keep]))
    rep = radius_conditions(radius, grid, int(params["pair_samples"]),
                            int(params["seed"]))
    aux = {"max_abs_mean": max_abs_mean,
           "lipschitz_estimate": rep.lipschitz_estimate,
           "sup_r_minus_abs": rep.sup_r_minus_abs,
           "inf_r_minus_abs": rep.inf_r_minus_abs}
    outcomes = {"all_means_zero": max_abs_mean <= 1e-9,
                "contraction_strict": strict,
                "lipschitz_below_one": rep.lipschitz_estimate < 1.0}
    return aux, outcomes


_register(
    Scenario(
        name="remark-contracting",
        dimension=2,
        mean_kind="sigma",
        summary=("tent field with the contracting radius |x|+2+(|x|+1)^-1: "
                 "every restricted circle average vanishes, yet the field "
                 "is not constant"),
        defaults=(("r_min", 1e-3), ("r_max", 1e4), ("n_radial", 40),
                  ("n_angular", 24), ("pair_samples", 1000), ("seed", 0),
                  ("tol", 1e-8)),
        expected=Expected(
            supermedian_holds=True,
            median_holds=False,
            notes=("r(x) - |x| >= 2 keeps every circle outside the unit "
                   "disk, so all circle means are exactly zero; the strict "
                   "contraction |r(x)-r(y)| < |x-y| shows a non-strict "
                   "Lipschitz bound is not enough for a Liouville theorem"),
            extras=(("all_means_zero", True), ("contraction_strict", True),
                    ("lipschitz_below_one", True)))),
    _build_contracting, _extras_contracting)


# -- discontinuous-r ----------------------------------------------------------

def _build_step(params, cfg):
    field = FieldSpec(Hat(), 2)
    radius = RadiusSpec(StepExample(), 2)
    return field, radius, _polar(params), {}


def _extras_step(params, cfg, field, radius, grid, points):
    rep = radius_conditions(radius, grid, int(params["pair_samples"]),
                            int(params["seed"]))
    fine_grid = PolarGrid(r_min=params["r_min"], r_max=params["r_max"],
                          n_radial=2 * int(params["n_radial"]),
                          n_angular=int(params["n_angular"]),
                          log_spacing=True)
    rep_fine = radius_conditions(radius, fine_grid,
                                 int(params["pair_samples"]),
                                 int(params["seed"]))
    aux = {"lipschitz_estimate": rep.lipschitz_estimate,
           "lipschitz_estimate_fine": rep_fine.lipschitz_estimate}
    outcomes = {"lipschitz_exceeds_one": rep.lipschitz_estimate > 1.0,
                "lipschitz_grows_with_resolution":
                    rep_fine.lipschitz_estimate > rep.lipschitz_estimate}
    return aux, outcomes


_register(
    Scenario(
        name="discontinuous-r",
        dimension=2,
        mean_kind="sigma",
        summary=("tent field with the radius jumping from 3 to 1 at |x|=2: "
                 "supermedian holds although the radius is not continuous"),
        defaults=(("r_min", 0.05), ("r_max", 50.0), ("n_radial", 40),
                  ("n_angular", 24), ("pair_samples", 1000), ("seed", 0),
                  ("tol", 1e-8)),
        expected=Expected(
            supermedian_holds=True,
            median_holds=False,
            notes=("both branches keep the circle outside the unit disk, so "
                   "all means vanish; the sampled slope estimate blows up "
                   "across |x|=2, evidencing the jump that continuity would "
                   "forbid"),
            extras=(("lipschitz_exceeds_one", True),
                    ("lipschitz_grows_with_resolution", True)))),
    _build_step, _extras_step)


# -- unbounded-r --------------------------------------------------------------

def _asymptotic_t_list(tmax: float) -> list[float]:
    ts = []
    t = 100.0
    while t <= tmax * (1 + 1e-12):
        ts.append(t)
        t *= 10.0
    return ts or [100.0]


def _build_unbounded(params, cfg):
    field = FieldSpec(X1Inv(), 2)
    radius = RadiusSpec(Parabolic(), 2)
    return field, radius, _polar(params), {}


def _extras_unbounded(params, cfg, field, radius, grid, points):
    ts = np.geomspace(params["strip_t_min"], params["strip_t_max"],
                      int(params["strip_t_count"]))
    strip = strip_bound_check(ts, cfg)
    asym = optimal_asymptotic(_asymptotic_t_list(params["tmax"]), cfg)
    rep = radius_conditions(radius, grid, int(params["pair_samples"]),
                            int(params["seed"]))
    aux = {"strip_bound": strip,
           "asymptotic": asym,
           "sup_r_minus_abs": rep.sup_r_minus_abs,
           "inf_r_minus_abs": rep.inf_r_minus_abs}
    outcomes = {"strip_bound_ok": all(e.within_bound for e in strip),
                "asymptotic_resolved": all(e.error is None for e in asym)}
    return aux, outcomes


_register(
    Scenario(
        name="unbounded-r",
        dimension=2,
        mean_kind="sigma",
        summary=("bounded field min{1, |x1|^-1} with radius 6 max{1, x1^2}: "
                 "supermedian with a radius growing far beyond |x|"),
        defaults=(("r_min", 1e-3), ("r_max", 1e4), ("n_radial", 36),
                  ("n_angular", 20), ("strip_t_min", 0.1),
                  ("strip_t_max", 1e3), ("strip_t_count", 20),
                  ("tmax", 100.0), ("pair_samples", 1000), ("seed", 0),
                  ("tol", 1e-8)),
        expected=Expected(
            supermedian_holds=True,
            median_holds=False,
            notes=("the circle meets the strip {|y1| <= 2a} in at most four "
                   "short arcs, bounding the strip mass by 1/(2a); off the "
                   "strip the field is below 1/(2a), giving the supermedian "
                   "bound; median radii along the x1-axis grow like "
                   "(2/pi) t ln t"),
            extras=(("strip_bound_ok", True),
                    ("asymptotic_resolved", True)))),
    _build_unbounded, _extras_unbounded)


# -- no-min-2d ----------------------------------------------------------------

def resolve_alpha_2d(c: float, alpha_max: float, tol: float,
                     cfg: QuadConfig | None = None) -> tuple[float, dict]:
    """Exponent choice: half the finite threshold, or 0.1 when none exists
    below the ceiling."""
    thr = alpha_star_2d(c, alpha_max, tol, cfg)
    if thr.unbounded:
        return 0.1, {"threshold_unbounded": True,
                     "threshold_ceiling": alpha_max}
    return min(thr.value, 1.0) / 2.0, {"threshold_unbounded": False,
                                       "threshold_value": thr.value}


def _build_nomin2d(params, cfg):
    c, m = params["c"], params["M"]
    if params["alpha"] is None:
        alpha, aux = resolve_alpha_2d(c, params["alpha_max"],
                                      params["threshold_tol"], cfg)
    else:
        alpha, aux = float(params["alpha"]), {}
    aux["alpha"] = alpha
    field = FieldSpec(RPow(alpha, c, m), 2)
    radius = RadiusSpec(MaxCAbsM(c, m), 2)
    return field, radius, _polar(params), aux


def _extras_nomin2d(params, cfg, field, radius, grid, points):
    fvals = np.array([pm.field_value for pm in points])
    nonconstant = bool(np.ptp(fvals) > 1e-12)
    return ({"field_min": float(fvals.min()),
             "field_max": float(fvals.max())},
            {"field_nonconstant": nonconstant})


_register(
    Scenario(
        name="no-min-2d",
        dimension=2,
        mean_kind="sigma",
        summary=("radial power max{c|x|, M}^-alpha with radius max{c|x|, M}: "
                 "a non-constant supermedian function in the plane once the "
                 "radius growth factor exceeds 1"),
        defaults=(("c", 2.0), ("M", 1.0), ("alpha", None),
                  ("alpha_max", 50.0), ("threshold_tol", 1e-6),
                  ("r_min", 1e-3), ("r_max", 1e4), ("n_radial", 120),
                  ("n_angular", 90), ("tol", 1e-8)),
        expected=Expected(
            supermedian_holds=True,
            median_holds=False,
            notes=("outside the plateau the circle mean contracts by the "
                   "factor I(alpha) < 1; on the plateau the field is at its "
                   "maximum, so the one-radius average can only fall below "
                   "it; the field takes many values, so no Liouville "
                   "conclusion holds"),
            extras=(("field_nonconstant", True),))),
    _build_nomin2d, _extras_nomin2d)


# -- no-min-1d ----------------------------------------------------------------

def _build_nomin1d(params, cfg):
    c, m = params["c"], params["M"]
    thr = alpha_star_1d(c, params["threshold_tol"])
    alpha = params["alpha"] if params["alpha"] is not None else thr.value / 2.0
    aux = {"threshold_value": thr.value, "alpha": alpha}
    field = FieldSpec(RPow(alpha, c, m), 1)
    radius = RadiusSpec(MaxCAbsM(c, m), 1)
    x_min = (m / c) * 1.01
    grid = LineGrid(x_min, params["x_max"], int(params["n_points"]),
                    log_spacing=True)
    return field, radius, grid, aux


def _extras_nomin1d(params, cfg, field, radius, grid, points):
    aux: dict = {}
    outcomes: dict = {}
    if params["run_supercritical"]:
        c, m = params["c"], params["M"]
        thr_value = alpha_star_1d(c, params["threshold_tol"]).value
        alpha_super = (params["alpha_super"]
                       if params["alpha_super"] is not None
                       else 0.5 * (thr_value + 1.0))
        field_super = FieldSpec(RPow(alpha_super, c, m), 1)
        pts_super = grid_means(field_super, radius, grid, "lambda", cfg)
        sup_report, _ = reports_from_means(pts_super, "lambda",
                                           params["tol"], cfg)
        aux["alpha_super"] = alpha_super
        aux["supercritical_violations"] = len(sup_report.violations)
        aux["supercritical_worst_margin"] = sup_report.worst_margin
        outcomes["supercritical_violation_found"] = \
            len(sup_report.violations) > 0
    return aux, outcomes


_register(
    Scenario(
        name="no-min-1d",
        dimension=1,
        mean_kind="lambda",
        summary=("radial power max{c|x|, M}^-alpha with the interval radius "
                 "max{c|x|, M} on the line: supermedian below the exponent "
                 "threshold, violated above it"),
        defaults=(("c", 3.0), ("M", 1.0), ("alpha", None),
                  ("alpha_super", None), ("threshold_tol", 1e-10),
                  ("x_max", 1e8), ("n_points", 300),
                  ("run_supercritical", True), ("tol", 1e-8)),
        expected=Expected(
            supermedian_holds=True,
            median_holds=False,
            notes=("on the region c|x| > M (where the radius equals c|x|) "
                   "the interval mean of |s|^-alpha relates to the center "
                   "value exactly through the sign of "
                   "(c+1)^(1-alpha)+(c-1)^(1-alpha)-2(1-alpha)c, so the "
                   "threshold is sharp there; the check grid is restricted "
                   "to that region"),
            extras=(("supercritical_violation_found", True),))),
    _build_nomin1d, _extras_nomin1d)


# -- liouville-1d-critical ----------------------------------------------------

def _build_liouville(params, cfg):
    m = params["M"]
    constants = solve_c0(params["c0_tol"])
    m_tilde = tilde_m(constants.c0, m, params["tilde_tol"])
    aux = {"c0": constants.c0, "m_tilde": m_tilde}
    field = FieldSpec(LogPlus(m), 1)
    radius = RadiusSpec(CAbsPlusM(constants.c0, m), 1)
    grid = LineGrid(m_tilde * 1.001, params["x_max"],
                    int(params["n_points"]), log_spacing=True)
    return field, radius, grid, aux


def _extras_liouville(params, cfg, field, radius, grid, points):
    m = params["M"]
    constants = solve_c0(params["c0_tol"])
    m_tilde = tilde_m(constants.c0, m, params["tilde_tol"])
    xs = np.geomspace(m_tilde * (1 + 1e-9), params["x_max"],
                      int(params["margin_grid"]))
    margins = np.array([tilde_m_margin(float(x), constants.c0, m)
                        for x in xs])
    aux = {"cutoff_margin_min": float(margins.min())}
    outcomes = {"cutoff_margin_positive": bool(np.all(margins > 0))}
    return aux, outcomes


_register(
    Scenario(
        name="liouville-1d-critical",
        dimension=1,
        mean_kind="lambda",
        summary=("log-plus field with the critical-growth interval radius "
                 "c0|x| + M: the one-radius interval mean stays below the "
                 "center value beyond the computed cutoff"),
        defaults=(("M", 1.0), ("x_max", 1e8), ("n_points", 1000),
                  ("margin_grid", 500), ("c0_tol", 1e-13),
                  ("tilde_tol", 1e-9), ("tol", 1e-8)),
        expected=Expected(
            supermedian_holds=True,
            median_holds=False,
            notes=("beyond the cutoff the margin "
                   "M ln(x-M) + c0 x ln((x-M)/x) - 1 is positive, which is "
                   "exactly r(x) times the gap between the center value and "
                   "the interval mean in the regime x - r(x) < -(M+1)"),
            extras=(("cutoff_margin_positive", True),))),
    _build_liouville, _extras_liouville)
