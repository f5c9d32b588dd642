"""Random cost matrices in the fundamental case.

Covers the exact probability that the optimal cost equals the smallest cost
value of a Bernoulli matrix, the increasing-cost edge process and its
stopping time, and Monte Carlo estimates of the events of interest.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Dict, NamedTuple, Optional, Sequence, Union

import numpy as np

from .analysis import contains_perfect_matching, region_solution_reduced
from .core import CostMatrix, fundamental_measure
from .solver import solve

__all__ = [
    "BernoulliCostSpec",
    "UniformCostSpec",
    "SimulationReport",
    "GraphProcess",
    "exact_prob_beta1",
    "prob_beta_j",
    "sample_bernoulli",
    "sample_uniform",
    "trial_rng",
    "graph_process_tau",
    "has_unique_reduced_minimizer",
    "run_experiment",
    "EVENTS",
    "P_SCHEDULES",
]


@dataclass(frozen=True)
class BernoulliCostSpec:
    """Each entry is ``beta1`` with probability ``p`` and ``beta2`` otherwise."""

    n: int
    p: float
    beta1: float = 0
    beta2: float = 1
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 <= self.p <= 1:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if not self.beta1 < self.beta2:
            raise ValueError("need beta1 < beta2")
        if self.beta1 < 0:
            raise ValueError("costs must be nonnegative")


@dataclass(frozen=True)
class UniformCostSpec:
    """I.i.d. entries uniform on ``[0, M]``."""

    n: int
    M: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not self.M > 0:
            raise ValueError(f"M must be positive, got {self.M}")


@dataclass
class SimulationReport:
    event: str
    n: int
    p_or_M: float
    trials: int
    seed: int
    hits: int
    frequency: float
    stderr: float
    exact: Optional[float] = None
    wall_time: float = 0.0

    def as_row(self) -> dict:
        row = asdict(self)
        del row["hits"], row["wall_time"]
        return row


# p_n schedules for sequences of experiments over n
P_SCHEDULES: Dict[str, Callable[[int], float]] = {
    "log_n_over_n": lambda n: min(1.0, math.log(n) / n) if n > 1 else 1.0,
    "n_pow_-1": lambda n: 1.0 / n,
    "n_pow_-0.5": lambda n: n ** -0.5,
}


def exact_prob_beta1(n: int, p: Union[float, Fraction, int]):
    """Probability that an n x n Bernoulli(p) matrix has a ``beta1`` in every line.

    A :class:`~fractions.Fraction` (or int) ``p`` gives an exact rational
    result from the inclusion-exclusion sum as written.  A float ``p`` uses
    the regrouped summands ``(-1)^(j+n) C(n,j) q^(n(n-j)) (1-q^j)^n``, whose
    factors all lie in ``[0, 1]``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if isinstance(p, (Fraction, int)) and not isinstance(p, bool):
        p = Fraction(p)
        if not 0 <= p <= 1:
            raise ValueError("p must lie in [0, 1]")
        if p == 1:
            return Fraction(1)
        q = 1 - p
        return q ** (n * n) * sum(
            (-1) ** j * comb(n, j) * (1 - q ** -j) ** n for j in range(n + 1)
        )
    p = float(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if p == 1:
        return 1.0
    q = 1.0 - p
    terms = [
        (-1) ** (j + n) * comb(n, j) * q ** (n * (n - j)) * (-math.expm1(j * math.log(q))) ** n
        for j in range(n + 1)
    ]
    return min(1.0, max(0.0, math.fsum(terms)))


def prob_beta_j(n: int, probs: Sequence, j: int):
    """Probability that the optimal fundamental cost is the ``j``-th smallest level.

    ``probs[k]`` is the probability of level ``k + 1``.  Exact when the
    probabilities are fractions.
    """
    if not 1 <= j <= len(probs):
        raise ValueError(f"j must lie in 1..{len(probs)}")
    if any(x < 0 for x in probs):
        raise ValueError("probabilities must be nonnegative")
    exact = all(isinstance(x, (Fraction, int)) for x in probs)
    total = sum(probs) if exact else math.fsum(probs)
    if (exact and total != 1) or (not exact and abs(total - 1) > 1e-12):
        raise ValueError(f"probabilities must sum to 1, got {total}")
    if exact:
        upto = sum(probs[:j], Fraction(0))
        below = sum(probs[: j - 1], Fraction(0))
    else:
        upto = 1.0 if j == len(probs) else math.fsum(probs[:j])
        below = math.fsum(probs[: j - 1])
    lower = exact_prob_beta1(n, below) if j > 1 else (Fraction(0) if exact else 0.0)
    return exact_prob_beta1(n, upto) - lower


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent generator for one trial, keyed by ``(seed, trial)``."""
    return np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), trial]))


def sample_bernoulli(spec: BernoulliCostSpec, trial: int) -> CostMatrix:
    rng = trial_rng(spec.seed, trial)
    hits = rng.random((spec.n, spec.n)) < spec.p
    return CostMatrix(
        tuple(tuple(spec.beta1 if h else spec.beta2 for h in row) for row in hits.tolist())
    )


def sample_uniform(spec: UniformCostSpec, trial: int) -> CostMatrix:
    rng = trial_rng(spec.seed, trial)
    return CostMatrix.from_array(rng.uniform(0.0, spec.M, size=(spec.n, spec.n)))


class GraphProcess(NamedTuple):
    """Edge process stopped when every row and column vertex has an edge.

    ``tau`` counts edges added; ``rank`` counts distinct cost levels used.
    They agree when the costs are distinct.
    """

    tau: int
    support: frozenset
    rank: int


def graph_process_tau(c: CostMatrix) -> GraphProcess:
    """Add cells in increasing cost order (ties lexicographic) until all lines are hit."""
    m, n = c.shape
    order = sorted(((c[i, j], (i, j)) for i in range(m) for j in range(n)))
    rows, cols = set(), set()
    added = []
    levels = 0
    last = None
    for value, (i, j) in order:
        if value != last:
            levels += 1
            last = value
        added.append((i, j))
        rows.add(i)
        cols.add(j)
        if len(rows) == m and len(cols) == n:
            break
    return GraphProcess(len(added), frozenset(added), levels)


def has_unique_reduced_minimizer(support, n: int, limit: int = 2) -> bool:
    """Whether the bipartite graph ``support`` on ``n + n`` vertices has exactly one
    minimal edge cover.

    In the fundamental case the reduced optimal plans are exactly the minimal
    edge covers (star forests spanning all vertices) inside the support of the
    threshold plan.  The search stops at ``limit`` distinct covers.
    """
    edges_at = {("r", i): [] for i in range(n)}
    edges_at.update({("c", j): [] for j in range(n)})
    for i, j in sorted(support):
        edges_at[("r", i)].append((i, j))
        edges_at[("c", j)].append((i, j))
    found = set()

    def star_ok(chosen, deg):
        return all(deg[("r", i)] == 1 or deg[("c", j)] == 1 for i, j in chosen)

    def rec(chosen, deg):
        if len(found) >= limit:
            return
        uncovered = [v for v in edges_at if deg[v] == 0]
        if not uncovered:
            found.add(frozenset(chosen))
            return
        v = min(uncovered, key=lambda v: len(edges_at[v]))
        for e in edges_at[v]:
            i, j = e
            deg[("r", i)] += 1
            deg[("c", j)] += 1
            chosen.append(e)
            if star_ok(chosen, deg):
                rec(chosen, deg)
            chosen.pop()
            deg[("r", i)] -= 1
            deg[("c", j)] -= 1
            if len(found) >= limit:
                return

    rec([], {v: 0 for v in edges_at})
    return len(found) == 1


def _beta1_support(c: CostMatrix, beta1) -> frozenset:
    m, n = c.shape
    return frozenset((i, j) for i in range(m) for j in range(n) if c[i, j] == beta1)


EVENTS = ("cost_is_beta1", "contains_pm", "unique_reduced", "unique_any_reduced")


def _event_fn(kind: str, spec) -> Callable[[CostMatrix], bool]:
    n = spec.n
    mu = fundamental_measure(n)

    def region_solution(c):
        return solve(mu, mu, c).per_region[0]

    if kind == "cost_is_beta1":
        if not isinstance(spec, BernoulliCostSpec):
            raise ValueError("cost_is_beta1 needs Bernoulli costs")
        return lambda c: region_solution(c).region_cost == spec.beta1
    if kind == "contains_pm":
        return lambda c: contains_perfect_matching(region_solution(c).support, n)
    if kind == "unique_reduced":
        return lambda c: region_solution_reduced(region_solution(c))
    if kind == "unique_any_reduced":
        return lambda c: has_unique_reduced_minimizer(region_solution(c).support, n)
    raise ValueError(f"unknown event {kind!r}; expected one of {EVENTS}")


def run_experiment(kind: str, spec, trials: int, threads: int = 1) -> SimulationReport:
    """Frequency of ``kind`` over ``trials`` independent fundamental instances.

    Trial ``t`` always sees the matrix keyed by ``(spec.seed, t)``, so the
    result does not depend on ``threads``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    event = _event_fn(kind, spec)
    sampler = sample_bernoulli if isinstance(spec, BernoulliCostSpec) else sample_uniform

    def count(lo, hi):
        return sum(1 for t in range(lo, hi) if event(sampler(spec, t)))

    start = time.perf_counter()
    if threads <= 1:
        hits = count(0, trials)
    else:
        bounds = np.linspace(0, trials, threads + 1).astype(int)
        with ThreadPoolExecutor(threads) as pool:
            hits = sum(pool.map(count, bounds[:-1], bounds[1:]))
    elapsed = time.perf_counter() - start
    f = hits / trials
    exact = None
    if kind == "cost_is_beta1":
        exact = float(exact_prob_beta1(spec.n, spec.p))
    return SimulationReport(
        event=kind,
        n=spec.n,
        p_or_M=spec.p if isinstance(spec, BernoulliCostSpec) else spec.M,
        trials=trials,
        seed=spec.seed,
        hits=hits,
        frequency=f,
        stderr=math.sqrt(f * (1 - f) / trials),
        exact=exact,
        wall_time=elapsed,
    )
