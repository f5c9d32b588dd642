"""Structure of plans: reducedness, reduction, perfect matchings, uniqueness."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, Optional

from .core import NEG_INF, CostMatrix, MaxPlusMeasure, Plan, is_plan
from .regions import Region
from .solver import RegionSolution, solve

__all__ = [
    "is_reduced",
    "is_reduced_on_region",
    "reduce",
    "max_matching",
    "contains_perfect_matching",
    "pm_feasible",
    "UniquenessCertificate",
    "uniqueness_certificate",
    "NotSquare",
]


class NotSquare(ValueError):
    pass


def _strict_in_row(entries, i, j) -> bool:
    x = entries[i][j]
    return all(y < x for jj, y in enumerate(entries[i]) if jj != j)


def _strict_in_col(entries, i, j) -> bool:
    x = entries[i][j]
    return all(r[j] < x for ii, r in enumerate(entries) if ii != i)


def is_reduced(h: Plan) -> bool:
    """Every finite entry is a strict maximum of its row or of its column.

    An entry that is the only finite one in its row (or column) counts as a
    strict maximum there.
    """
    e = h.entries
    return all(_strict_in_row(e, i, j) or _strict_in_col(e, i, j) for i, j in h.support)


def is_reduced_on_region(region: Region, support: Iterable) -> bool:
    """Reducedness of a ``{lam, -inf}`` plan of a region.

    A cell is a strict maximum of its line when it is the only support cell
    of an *active* row or column.  Cells in the region's other lines sit below
    the line maximum, which lives in a higher region.  With this reading the
    flag agrees with plain reducedness of any global plan that carries
    ``support`` on the region.
    """
    support = set(support)
    row_count: Dict[int, int] = {}
    col_count: Dict[int, int] = {}
    for i, j in support:
        row_count[i] = row_count.get(i, 0) + 1
        col_count[j] = col_count.get(j, 0) + 1
    return all(
        (i in region.active_rows and row_count[i] == 1)
        or (j in region.active_cols and col_count[j] == 1)
        for i, j in support
    )


def reduce(h: Plan) -> Plan:
    """Drop entries that are strict maxima of neither their row nor their column.

    Cells are visited once in lexicographic order and each test sees the
    deletions made so far.  Deleting a non-strict entry never changes a row or
    column maximum, and later deletions only make kept entries more strict, so
    one pass reaches a reduced plan.
    """
    e = [list(r) for r in h.entries]
    for i, j in sorted(h.support):
        if not (_strict_in_row(e, i, j) or _strict_in_col(e, i, j)):
            e[i][j] = NEG_INF
    return Plan(e)


def max_matching(adj, n_right: int) -> dict:
    """Maximum bipartite matching by Hopcroft-Karp.

    ``adj[u]`` lists the right vertices adjacent to left vertex ``u``.
    Returns the matching as ``{left: right}``.
    """
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    INF = n_left + n_right + 1
    dist = [0] * n_left

    def bfs():
        q = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u):
        # iterative augmenting search along the BFS layering
        stack = [(u, iter(adj[u]))]
        path = []
        while stack:
            x, it = stack[-1]
            advanced = False
            for v in it:
                w = match_r[v]
                if w == -1:
                    path.append((x, v))
                    for a, b in path:
                        match_l[a] = b
                        match_r[b] = a
                    return True
                if dist[w] == dist[x] + 1:
                    path.append((x, v))
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                dist[x] = INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in range(n_left):
            if match_l[u] == -1:
                dfs(u)
    return {u: v for u, v in enumerate(match_l) if v != -1}


def contains_perfect_matching(h, n: Optional[int] = None) -> bool:
    """Whether the support of ``h`` contains the graph of a permutation.

    ``h`` is a square :class:`Plan`, or a set of cells together with ``n``.
    """
    if isinstance(h, Plan):
        m, k = h.shape
        if m != k:
            raise NotSquare(f"perfect matchings need a square plan, got {m}x{k}")
        n, support = m, h.support
    else:
        if n is None:
            raise TypeError("n is required when passing a cell set")
        support = h
    adj = [[] for _ in range(n)]
    for i, j in support:
        adj[i].append(j)
    if any(not a for a in adj):
        return False
    for a in adj:
        a.sort()
    return len(max_matching(adj, n)) == n


def pm_feasible(mu: MaxPlusMeasure, nu: MaxPlusMeasure) -> bool:
    """Necessary condition for a plan supported on a permutation: equal sorted weights.

    Not sufficient in general; ``True`` only means the obstruction is absent.
    """
    return len(mu) == len(nu) and mu.weights == nu.weights


@dataclass(frozen=True)
class UniquenessCertificate:
    """Per-region reducedness of the threshold plans.

    ``per_region[lam]`` is True iff the threshold plan of that region is the
    only optimal ``{lam, -inf}`` plan of the region.  ``overall_fundamental``
    is only set when there is a single region.
    """

    per_region: Dict[object, bool]
    overall_fundamental: Optional[bool]

    @property
    def unique(self) -> bool:
        return all(self.per_region.values())


def uniqueness_certificate(mu: MaxPlusMeasure, nu: MaxPlusMeasure, c: CostMatrix, solution=None) -> UniquenessCertificate:
    if solution is None:
        solution = solve(mu, nu, c)
    flags = {rs.region.lam: region_solution_reduced(rs) for rs in solution.per_region}
    overall = next(iter(flags.values())) if len(flags) == 1 else None
    return UniquenessCertificate(flags, overall)


def region_solution_reduced(rs: RegionSolution) -> bool:
    return is_reduced_on_region(rs.region, rs.support)
