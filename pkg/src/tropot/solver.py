"""Exact solver for the discrete max-plus transport problem.

Each region is solved by a threshold sweep: cells are admitted in order of
increasing cost, a whole cost level at a time, until every active row and
column of the region holds an admitted cell.  The admitted set at that moment
is the support of an optimal plan of the region and the last admitted cost
level, shifted by ``lam``, is the optimal region cost.  The global optimum is
the maximum of the region costs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import List, NamedTuple

from .core import (
    NEG_INF,
    CostMatrix,
    DimensionMismatch,
    MaxPlusMeasure,
    Plan,
)
from .regions import Region, build_regions, thresholds

__all__ = [
    "RegionSolution",
    "Solution",
    "solve_region",
    "solve",
    "closed_form_distinct",
    "FormulaInapplicable",
    "threshold_support",
    "covers",
]


class FormulaInapplicable(ValueError):
    pass


@dataclass(frozen=True)
class RegionSolution:
    """Optimal threshold plan of one region.

    ``m_c`` is the 1-based rank in ``betas`` of the cost level at which the
    sweep stops; ``witness`` is the lexicographically smallest cell with that
    cost.
    """

    region: Region
    betas: tuple
    m_c: int
    support: frozenset
    region_cost: object
    witness: tuple

    @property
    def lam(self):
        return self.region.lam

    @property
    def beta(self):
        return self.betas[self.m_c - 1]

    @property
    def plan(self) -> dict:
        """Cell -> value over the region (``lam`` on the support, NEG_INF elsewhere)."""
        lam = self.region.lam
        return {cell: (lam if cell in self.support else NEG_INF) for cell in self.region.cells}

    def rank(self, cost) -> int:
        """Position (1-based) of a cost value among ``betas``."""
        return self.betas.index(cost) + 1


class Solution(NamedTuple):
    cost: object
    plan: Plan
    per_region: List[RegionSolution]


def covers(region: Region, support) -> bool:
    """True iff ``support`` hits every active row and active column of ``region``."""
    rows = {i for i, _ in support}
    cols = {j for _, j in support}
    return region.active_rows <= rows and region.active_cols <= cols


def threshold_support(region: Region, c: CostMatrix, beta) -> frozenset:
    """Cells of the region with cost at most ``beta``."""
    return frozenset(cell for cell in region.cells if c[cell] <= beta)


def solve_region(region: Region, c: CostMatrix) -> RegionSolution:
    if not region.cells:
        raise ValueError("empty region")
    cells = sorted(region.cells, key=lambda cell: (c[cell], cell))
    betas = tuple(sorted({c[cell] for cell in cells}))
    need_r = set(region.active_rows)
    need_c = set(region.active_cols)
    admitted = []
    # equal costs enter together: a cost level is one threshold
    for m, (beta, group) in enumerate(groupby(cells, key=lambda cell: c[cell]), start=1):
        group = list(group)
        for i, j in group:
            need_r.discard(i)
            need_c.discard(j)
        admitted.extend(group)
        if not need_r and not need_c:
            break
    return RegionSolution(
        region=region,
        betas=betas,
        m_c=m,
        support=frozenset(admitted),
        region_cost=region.lam + beta,
        witness=group[0],
    )


def _check(mu: MaxPlusMeasure, nu: MaxPlusMeasure, c: CostMatrix):
    if c.shape != (len(mu), len(nu)):
        raise DimensionMismatch(
            f"cost is {c.shape[0]}x{c.shape[1]} but measures have sizes {len(mu)}, {len(nu)}"
        )


def solve(mu: MaxPlusMeasure, nu: MaxPlusMeasure, c: CostMatrix) -> Solution:
    """Optimal cost, an optimal plan and the per-region threshold solutions."""
    _check(mu, nu, c)
    per_region = [solve_region(r, c) for r in build_regions(mu, nu)]
    values = {}
    for rs in per_region:
        for cell in rs.support:
            values[cell] = rs.region.lam
    plan = Plan.from_support(c.shape, values)
    cost = max(rs.region_cost for rs in per_region)
    return Solution(cost, plan, per_region)


def closed_form_distinct(mu: MaxPlusMeasure, nu: MaxPlusMeasure, c: CostMatrix):
    """Max-min expression for the optimal cost when all weights besides the two zeros differ."""
    _check(mu, nu, c)
    k, l = mu.weights, nu.weights
    rest = list(k[1:]) + list(l[1:])
    if len(set(rest)) != len(rest) or 0 in rest:
        raise FormulaInapplicable("weights other than k_1 = l_1 = 0 must be pairwise distinct")
    p, q = thresholds(mu, nu)
    row_part = max(min(k[i] + c[i, j] for j in range(p[i])) for i in range(len(k)))
    col_part = max(min(l[j] + c[i, j] for i in range(q[j])) for j in range(len(l)))
    return max(row_part, col_part)
