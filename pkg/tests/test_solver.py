import itertools

import hypothesis.strategies as st
import pytest
from hypothesis import given

from tropot import (
    NEG_INF,
    CostMatrix,
    Plan,
    build_regions,
    closed_form_distinct,
    fundamental_measure,
    is_plan,
    normalize_measure,
    objective,
    solve,
    solve_region,
    thresholds,
)
from tropot.core import DimensionMismatch
from tropot.oracle import brute_force_global, brute_force_region_cost
from tropot.regions import Region
from tropot.solver import FormulaInapplicable, covers, threshold_support

from conftest import one_based, problems


def full_region(n, lam=0):
    return Region(
        lam=lam,
        cells=frozenset(itertools.product(range(n), range(n))),
        rows=frozenset(range(n)),
        cols=frozenset(range(n)),
        active_rows=frozenset(range(n)),
        active_cols=frozenset(range(n)),
    )


@pytest.mark.parametrize("lam", [0, -3])
def test_threshold_rank_three_by_three(lam):
    rs = solve_region(full_region(3, lam), CostMatrix([[2, 4, 8], [8, 2, 0], [2, 0, 5]]))
    assert rs.m_c == 2
    assert rs.betas == (0, 2, 4, 5, 8)
    assert rs.support == one_based((1, 1), (2, 2), (2, 3), (3, 1), (3, 2))
    assert rs.region_cost == lam + 2
    assert rs.witness == (0, 0)


def test_unique3_region():
    rs = solve_region(full_region(3), CostMatrix([[5, 1, 5], [5, 2, 5], [3, 5, 4]]))
    assert (rs.m_c, rs.betas, rs.region_cost) == (4, (1, 2, 3, 4, 5), 4)
    assert rs.support == one_based((1, 2), (2, 2), (3, 1), (3, 3))


def test_single_cell_region():
    r = Region(-2, frozenset({(0, 0)}), frozenset({0}), frozenset({0}), frozenset({0}), frozenset())
    rs = solve_region(r, CostMatrix([[3]]))
    assert (rs.m_c, rs.region_cost) == (1, 1)


def test_solve_unique3(unique3):
    mu, nu, c = unique3
    sol = solve(mu, nu, c)
    N = NEG_INF
    assert sol.cost == 4
    assert sol.plan == Plan([[N, 0, N], [N, 0, N], [0, N, 0]])


def test_solve_trivial_cases(staircase):
    one = fundamental_measure(1)
    sol = solve(one, one, CostMatrix([[6]]))
    assert sol.cost == 6 and sol.plan.entries == ((0,),)
    mu, nu = staircase
    assert solve(mu, nu, CostMatrix([[0] * 6] * 6)).cost == 0
    with pytest.raises(DimensionMismatch):
        solve(one, one, CostMatrix([[1, 2]]))


def test_closed_form_cases():
    one = fundamental_measure(1)
    assert closed_form_distinct(one, one, CostMatrix([[5]])) == 5
    mu, nu = normalize_measure([0, -1]), normalize_measure([0, -2])
    c = CostMatrix([[1, 2], [3, 4]])
    # max(min(0+1), min(-1+3)) v max(min(0+1), min(-2+2, -2+4)) = 2
    assert closed_form_distinct(mu, nu, c) == 2 == solve(mu, nu, c).cost
    with pytest.raises(FormulaInapplicable):
        closed_form_distinct(normalize_measure([0, -1, -1]), nu, CostMatrix([[1, 1]] * 3))


@st.composite
def distinct_weight_problems(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, 4))
    rest = draw(st.lists(st.integers(-20, -1), min_size=m + n - 2, max_size=m + n - 2, unique=True))
    mu = normalize_measure([0] + rest[: m - 1])
    nu = normalize_measure([0] + rest[m - 1:])
    c = CostMatrix([[draw(st.integers(0, 30)) for _ in range(n)] for _ in range(m)])
    return mu, nu, c


@given(distinct_weight_problems())
def test_closed_form_matches_solver(prob):
    mu, nu, c = prob
    assert closed_form_distinct(mu, nu, c) == solve(mu, nu, c).cost == brute_force_global(mu, nu, c)


@given(problems())
def test_solver_against_oracle(prob):
    mu, nu, c = prob
    sol = solve(mu, nu, c)
    assert sol.cost == brute_force_global(mu, nu, c)
    assert is_plan(sol.plan, mu, nu)
    assert objective(sol.plan, c) == sol.cost
    assert sol.cost == max(rs.region_cost for rs in sol.per_region)


@given(problems())
def test_per_region_matches_region_oracle(prob):
    mu, nu, c = prob
    for rs in solve(mu, nu, c).per_region:
        cost, supports = brute_force_region_cost(rs.region, c)
        assert rs.region_cost == cost
        # every optimal support lies inside the threshold support
        assert all(s <= rs.support for s in supports)


@given(problems())
def test_region_solution_invariants(prob):
    mu, nu, c = prob
    sol = solve(mu, nu, c)
    for rs in sol.per_region:
        r = rs.region
        assert rs.support == threshold_support(r, c, rs.beta)
        assert covers(r, rs.support)
        if rs.m_c > 1:
            assert not covers(r, threshold_support(r, c, rs.betas[rs.m_c - 2]))
        assert rs.betas == tuple(sorted({c[cell] for cell in r.cells}))
        assert rs.region_cost == r.lam + rs.beta
        assert c[rs.witness] == rs.beta
        assert rs.witness == min(cell for cell in r.cells if c[cell] == rs.beta)
        for cell, v in rs.plan.items():
            assert sol.plan[cell] == v


@given(problems())
def test_no_single_deletion_improves(prob):
    mu, nu, c = prob
    sol = solve(mu, nu, c)
    rows = [list(r) for r in sol.plan.entries]
    for i, j in sol.plan.support:
        saved, rows[i][j] = rows[i][j], NEG_INF
        h = Plan(rows)
        if is_plan(h, mu, nu):
            assert objective(h, c) >= sol.cost
        rows[i][j] = saved


@given(problems())
def test_row_peaks_stay_inside_segments(prob):
    mu, nu, c = prob
    sol = solve(mu, nu, c)
    p, _ = thresholds(mu, nu)
    for i, j in sol.plan.support:
        if sol.plan[i, j] == mu[i]:
            assert j < p[i]


def test_solve_is_deterministic(staircase):
    mu, nu = staircase
    c = CostMatrix([[(i * 7 + j * 3) % 5 for j in range(6)] for i in range(6)])
    assert solve(mu, nu, c) == solve(mu, nu, c)
