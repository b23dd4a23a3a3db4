"""meanlab: a numerical laboratory for restricted mean value properties.

Evaluates circle, disk, and interval means of expression-tree fields,
certifies one-radius supermedian/median properties on sampling grids,
computes the critical constants of the 1D/2D regimes, and replays the
counterexample gallery and the outward propagation iteration.
"""

__version__ = "0.1.0"

from .errors import (DimensionMismatch, DomainError, InfiniteValue,
                     InvalidOverride, MeanLabError, NoSignChange,
                     NonConvergenceError, ParseError, PositivityError,
                     ScanExhausted, UnknownScenario)
from .exprs import FieldSpec, RadiusSpec
from .grids import CartesianGrid, LineGrid, PolarGrid, enumerate_grid
from .means import (circle_mean, disk_mean, interval_mean, mean_value,
                    median_radius)
from .properties import (CheckReport, RadiusReport, check_median,
                         check_supermedian, radius_conditions)
from .quadrature import InfinityPolicy, MeanResult, QuadConfig
from .special import (CriticalConstants, I_integral, Threshold, alpha_star_1d,
                      alpha_star_2d, big_psi, psi, psi_prime, solve_c0,
                      tilde_m)
from .fenton import CircleProfile, FentonTrace, fenton_init, fenton_step, fenton_trace
from .gallery import (list_scenarios, optimal_asymptotic, run_scenario,
                      strip_bound_check)
from .parser import parse_field, parse_grid, parse_radius

__all__ = [
    "CartesianGrid", "CheckReport", "CircleProfile", "CriticalConstants",
    "DimensionMismatch", "DomainError", "FentonTrace", "FieldSpec",
    "I_integral", "InfiniteValue", "InfinityPolicy", "InvalidOverride",
    "LineGrid", "MeanLabError", "MeanResult", "NoSignChange",
    "NonConvergenceError", "ParseError", "PolarGrid", "PositivityError",
    "QuadConfig", "RadiusReport", "RadiusSpec", "ScanExhausted", "Threshold",
    "UnknownScenario", "alpha_star_1d", "alpha_star_2d", "big_psi",
    "check_median", "check_supermedian", "circle_mean", "disk_mean",
    "enumerate_grid", "fenton_init", "fenton_step", "fenton_trace",
    "interval_mean", "list_scenarios", "mean_value", "median_radius",
    "optimal_asymptotic", "parse_field", "parse_grid", "parse_radius", "psi",
    "psi_prime", "radius_conditions", "run_scenario", "solve_c0",
    "strip_bound_check", "tilde_m",
]
