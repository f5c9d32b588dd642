"""Brute-force reference implementations for small instances.

Nothing here calls into the solver or the analysis module; these functions
exist to check them.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .core import NEG_INF, CostMatrix, MaxPlusMeasure, Plan, is_plan, objective
from .regions import Region

__all__ = [
    "InstanceTooLarge",
    "brute_force_region_cost",
    "brute_force_global",
    "brute_force_global_literal",
    "enumerate_plans",
    "brute_force_pm",
    "enumerate_prob_beta1",
    "enumerate_prob_beta_j",
    "permutation_plans",
]

MAX_REGION_CELLS = 25
MAX_GLOBAL_SIDE = 4
MAX_PM_SIDE = 6
MAX_PROB_SIDE = 4
_CHUNK = 1 << 16


class InstanceTooLarge(ValueError):
    pass


def _subset_masks(k: int, start: int, stop: int) -> np.ndarray:
    """Boolean rows for subset codes ``start .. stop - 1`` over ``k`` items."""
    codes = np.arange(start, stop, dtype=np.int64)
    return ((codes[:, None] >> np.arange(k, dtype=np.int64)) & 1).astype(bool)


def _line_hits(masks: np.ndarray, members: list) -> np.ndarray:
    """For each subset, whether it contains one of the item positions ``members``."""
    if not members:
        return np.zeros(len(masks), dtype=bool)
    return masks[:, members].any(axis=1)


def brute_force_region_cost(region: Region, c: CostMatrix):
    """Optimal ``{lam, -inf}`` plan cost of a region by subset enumeration.

    Returns ``(cost, supports)`` where ``supports`` lists every optimal support
    as a frozenset of cells.
    """
    cells = sorted(region.cells)
    k = len(cells)
    if k > MAX_REGION_CELLS:
        raise InstanceTooLarge(f"region has {k} cells, limit is {MAX_REGION_CELLS}")
    costs = [c[cell] for cell in cells]
    # rank costs so the search runs on small integers and stays exact
    levels = sorted(set(costs))
    rank = np.array([levels.index(x) for x in costs], dtype=np.int64)
    row_members = {i: [t for t, (a, _) in enumerate(cells) if a == i] for i in region.active_rows}
    col_members = {j: [t for t, (_, b) in enumerate(cells) if b == j] for j in region.active_cols}
    best = None
    winners = []
    for start in range(1, 1 << k, _CHUNK):
        stop = min(start + _CHUNK, 1 << k)
        masks = _subset_masks(k, start, stop)
        ok = np.ones(len(masks), dtype=bool)
        for members in list(row_members.values()) + list(col_members.values()):
            ok &= _line_hits(masks, members)
        if not ok.any():
            continue
        masks = masks[ok]
        worst = np.where(masks, rank[None, :], -1).max(axis=1)
        lo = int(worst.min())
        if best is None or lo < best:
            best, winners = lo, []
        if lo == best:
            for row in masks[worst == best]:
                winners.append(frozenset(cells[t] for t in np.flatnonzero(row)))
    return region.lam + levels[best], winners


def brute_force_global(mu: MaxPlusMeasure, nu: MaxPlusMeasure, c: CostMatrix):
    """Exact optimal cost over all plans by enumeration.

    Any plan can be lowered, cell by cell, to ``-inf`` or ``min(k_i, l_j)``:
    an entry above that bound is infeasible, an entry strictly below it never
    attains a row or column maximum, and lowering entries cannot raise the
    objective.  So it suffices to enumerate the ``2^(m n)`` choices of which
    cells carry ``min(k_i, l_j)``, keeping those that are plans.
    """
    m, n = len(mu), len(nu)
    if max(m, n) > MAX_GLOBAL_SIDE:
        raise InstanceTooLarge(f"{m}x{n} exceeds the {MAX_GLOBAL_SIDE}x{MAX_GLOBAL_SIDE} limit")
    cells = [(i, j) for i in range(m) for j in range(n)]
    cap = [min(mu[i], nu[j]) for i, j in cells]
    vals = [cap[t] + c[cells[t]] for t in range(len(cells))]
    levels = sorted(set(vals))
    rank = np.array([levels.index(v) for v in vals], dtype=np.int64)
    # a row max of k_i is reached only at a cell whose cap equals k_i
    row_members = [[t for t, (a, _) in enumerate(cells) if a == i and cap[t] == mu[i]] for i in range(m)]
    col_members = [[t for t, (_, b) in enumerate(cells) if b == j and cap[t] == nu[j]] for j in range(n)]
    k = len(cells)
    best = None
    for start in range(1, 1 << k, _CHUNK):
        stop = min(start + _CHUNK, 1 << k)
        masks = _subset_masks(k, start, stop)
        ok = np.ones(len(masks), dtype=bool)
        for members in row_members + col_members:
            ok &= _line_hits(masks, members)
        if ok.any():
            lo = int(np.where(masks[ok], rank[None, :], -1).max(axis=1).min())
            best = lo if best is None else min(best, lo)
    return levels[best]


def enumerate_plans(mu: MaxPlusMeasure, nu: MaxPlusMeasure):
    """Yield every plan whose entries lie in ``{-inf}`` and the weights of ``mu``, ``nu``."""
    m, n = len(mu), len(nu)
    values = [NEG_INF] + sorted(set(mu.weights) | set(nu.weights))
    # an entry above min(k_i, l_j) breaks a row or column maximum
    row_options = []
    for i in range(m):
        per_cell = [[v for v in values if v <= min(mu[i], nu[j])] for j in range(n)]
        row_options.append([r for r in itertools.product(*per_cell) if max(r) == mu[i]])
    for rows in itertools.product(*row_options):
        if all(max(r[j] for r in rows) == nu[j] for j in range(n)):
            yield Plan(rows)


def brute_force_global_literal(mu: MaxPlusMeasure, nu: MaxPlusMeasure, c: CostMatrix, limit: int = 9):
    """Optimum over :func:`enumerate_plans`; only for tiny grids (``m n <= limit``)."""
    if len(mu) * len(nu) > limit:
        raise InstanceTooLarge(f"{len(mu)}x{len(nu)} grid exceeds {limit} cells")
    best = None
    for h in enumerate_plans(mu, nu):
        assert is_plan(h, mu, nu)
        v = objective(h, c)
        best = v if best is None else min(best, v)
    return best


def permutation_plans(mu: MaxPlusMeasure, nu: MaxPlusMeasure):
    """All enumerated plans (see :func:`enumerate_plans`) whose support is a permutation graph."""
    n = len(mu)
    for h in enumerate_plans(mu, nu):
        s = h.support
        if len(s) == n == len(nu) and len({i for i, _ in s}) == n and len({j for _, j in s}) == n:
            yield h


def brute_force_pm(support, n: int) -> bool:
    """Whether some permutation ``sigma`` has every ``(i, sigma(i))`` in ``support``."""
    if n > MAX_PM_SIDE:
        raise InstanceTooLarge(f"n = {n} exceeds {MAX_PM_SIDE}")
    support = set(support)
    return any(
        all((i, s) in support for i, s in enumerate(sigma))
        for sigma in itertools.permutations(range(n))
    )


def _all_lines_hit(grid: np.ndarray) -> np.ndarray:
    """``grid`` has shape (batch, n, n); True where every row and column has a True."""
    return grid.any(axis=2).all(axis=1) & grid.any(axis=1).all(axis=1)


def enumerate_prob_beta1(n: int, p) -> Fraction:
    """Exact probability that an n x n Bernoulli(p) matrix has a hit in every line.

    Sums ``p^a q^(n^2 - a)`` over all ``2^(n^2)`` hit patterns that meet every
    row and column, ``a`` being the number of hits.
    """
    if n > MAX_PROB_SIDE:
        raise InstanceTooLarge(f"n = {n} exceeds {MAX_PROB_SIDE}")
    p = Fraction(p)
    q = 1 - p
    k = n * n
    counts = np.zeros(k + 1, dtype=np.int64)
    masks = _subset_masks(k, 0, 1 << k)
    good = _all_lines_hit(masks.reshape(-1, n, n))
    np.add.at(counts, masks[good].sum(axis=1), 1)
    return sum((int(counts[a]) * p**a * q ** (k - a) for a in range(k + 1)), Fraction(0))


def enumerate_prob_beta_j(n: int, probs, j: int) -> Fraction:
    """Exact P(optimal fundamental cost = beta_j) for i.i.d. entries over levels ``1..s``.

    Enumerates all ``s^(n^2)`` level matrices and evaluates each with
    :func:`brute_force_region_cost` on the full grid.
    """
    if n > 2 and len(probs) ** (n * n) > 200_000:
        raise InstanceTooLarge("too many matrices to enumerate")
    probs = [Fraction(x) for x in probs]
    s = len(probs)
    grid = Region(
        lam=0,
        cells=frozenset((a, b) for a in range(n) for b in range(n)),
        rows=frozenset(range(n)),
        cols=frozenset(range(n)),
        active_rows=frozenset(range(n)),
        active_cols=frozenset(range(n)),
    )
    total = Fraction(0)
    for levels in itertools.product(range(1, s + 1), repeat=n * n):
        c = CostMatrix([levels[a * n:(a + 1) * n] for a in range(n)])
        cost, _ = brute_force_region_cost(grid, c)
        if cost == j:
            w = Fraction(1)
            for lv in levels:
                w *= probs[lv - 1]
            total += w
    return total
