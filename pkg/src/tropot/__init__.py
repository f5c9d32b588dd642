"""Exact solver and experiments for discrete max-plus (tropical) optimal transport."""

__version__ = "0.1.0"

from .core import (
    NEG_INF,
    CostMatrix,
    MaxPlusMeasure,
    Plan,
    fundamental_measure,
    is_plan,
    normalize_measure,
    objective,
    trivial_plan,
)
from .regions import Region, build_regions, thresholds
from .solver import RegionSolution, Solution, closed_form_distinct, solve, solve_region
from .analysis import (
    UniquenessCertificate,
    contains_perfect_matching,
    is_reduced,
    is_reduced_on_region,
    pm_feasible,
    reduce,
    uniqueness_certificate,
)
