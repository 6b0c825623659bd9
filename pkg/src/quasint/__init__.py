"""Exact quasi-integrals of piecewise-linear functions against deficient topological measures."""

from .distributions import (BoundaryMeasure, DistributionBundle, StieltjesMeasure,
                            distribution_bundle, integral_of_identity, left_measure,
                            pushforward_check, right_measure, rl_equal_criterion,
                            stieltjes_integral)
from .errors import QuasintError
from .functional_lab import ClassificationReport, classify, generate_case, quasi_linearity_check
from .intervals import Interval, IntervalSet, Space
from .measures import (ConicCombo, Dirac, Dtm, LebesgueOn, SimpleContains, catalog,
                       is_topological_measure, validate_dtm)
from .pwl import MonotoneProfile, PwlFunction
from .quasi_integral import (FunctionalHandle, induced_L, induced_R, linear_functional,
                             quasi_integral_L, quasi_integral_R)
from .reconstruction import norm_estimate, reconstruct, reconstruct_compact, reconstruct_open
from .reports import CheckReport

__all__ = [
    "BoundaryMeasure", "CheckReport", "ClassificationReport", "ConicCombo", "Dirac",
    "DistributionBundle", "Dtm", "FunctionalHandle", "Interval", "IntervalSet", "LebesgueOn",
    "MonotoneProfile", "PwlFunction", "QuasintError", "SimpleContains", "Space",
    "StieltjesMeasure", "catalog", "classify", "distribution_bundle", "generate_case",
    "induced_L", "induced_R", "integral_of_identity", "is_topological_measure", "left_measure",
    "linear_functional", "norm_estimate", "pushforward_check", "quasi_integral_L",
    "quasi_integral_R", "quasi_linearity_check", "reconstruct", "reconstruct_compact",
    "reconstruct_open", "right_measure", "rl_equal_criterion", "stieltjes_integral",
    "validate_dtm",
]
