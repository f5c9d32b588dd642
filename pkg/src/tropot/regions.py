"""Partition of the cell grid into lambda-regions.

For sorted weights ``k`` (rows) and ``l`` (columns), row ``i`` owns the
segment ``S_i`` = columns ``0 .. p_i - 1`` with ``p_i = #{j : l_j >= k_i}``, and
column ``j`` owns ``T_j`` = rows ``0 .. q_j - 1`` with ``q_j = #{i : k_i >= l_j}``.
The region of ``lam`` is the union of the segments owned by rows and columns
of weight ``lam``.  Every cell belongs to exactly one region.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .core import MaxPlusMeasure

__all__ = ["Region", "thresholds", "build_regions", "region_of_cell"]


@dataclass(frozen=True)
class Region:
    """Cells of one lambda-region.

    ``rows``/``cols`` are the projections of ``cells``.  ``active_rows`` and
    ``active_cols`` are the lines whose weight equals ``lam``; those are the
    lines a plan of the region has to hit with the value ``lam``.  The other
    projected lines already reach their (larger) maximum in another region.
    """

    lam: object
    cells: frozenset
    rows: frozenset
    cols: frozenset
    active_rows: frozenset
    active_cols: frozenset

    def __len__(self):
        return len(self.cells)

    def __contains__(self, cell):
        return cell in self.cells

    def sorted_cells(self) -> list:
        return sorted(self.cells)


def thresholds(mu: MaxPlusMeasure, nu: MaxPlusMeasure) -> Tuple[tuple, tuple]:
    """Segment lengths ``p`` (per row) and ``q`` (per column)."""
    k, l = mu.weights, nu.weights
    p = tuple(sum(1 for lj in l if lj >= ki) for ki in k)
    q = tuple(sum(1 for ki in k if ki >= lj) for lj in l)
    return p, q


def build_regions(mu: MaxPlusMeasure, nu: MaxPlusMeasure) -> List[Region]:
    """All regions, one per distinct weight of either measure, by descending lambda."""
    p, q = thresholds(mu, nu)
    k, l = mu.weights, nu.weights
    lams = sorted(set(k) | set(l), reverse=True)
    out = []
    for lam in lams:
        act_r = frozenset(i for i, ki in enumerate(k) if ki == lam)
        act_c = frozenset(j for j, lj in enumerate(l) if lj == lam)
        cells = set()
        for i in act_r:
            cells.update((i, j) for j in range(p[i]))
        for j in act_c:
            cells.update((i, j) for i in range(q[j]))
        cells = frozenset(cells)
        out.append(
            Region(
                lam=lam,
                cells=cells,
                rows=frozenset(i for i, _ in cells),
                cols=frozenset(j for _, j in cells),
                active_rows=act_r,
                active_cols=act_c,
            )
        )
    return out


def region_of_cell(i: int, j: int, mu: MaxPlusMeasure, nu: MaxPlusMeasure):
    """Lambda of the region containing cell ``(i, j)``: ``min(k_i, l_j)``."""
    return min(mu[i], nu[j])
