from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from connquery.certificates.lp import LPProblem, solve_lp


def test_empty_problem():
    res = solve_lp(LPProblem(c=[], maximize=True))
    assert res.optimal and res.value == 0


def test_single_upper_bound():
    res = solve_lp(LPProblem(c=[1], A_ub=[[1]], b_ub=[3], maximize=True))
    assert res.value == 3 and res.x == [3] and res.dual_ub == [1]


def test_small_fractional_optimum():
    # min x + y  s.t.  2x + y >= 2,  x + 3y >= 3
    res = solve_lp(LPProblem(c=[1, 1], A_ub=[[-2, -1], [-1, -3]], b_ub=[-2, -3]))
    assert res.value == Fraction(7, 5) and res.x == [Fraction(3, 5), Fraction(4, 5)]


def test_infeasible_and_unbounded():
    assert solve_lp(LPProblem(c=[1], A_ub=[[1], [-1]], b_ub=[1, -2])).status == "infeasible"
    assert solve_lp(LPProblem(c=[1], maximize=True)).status == "unbounded"
    assert solve_lp(LPProblem(c=[1], bounds=[(None, None)])).status == "unbounded"


def test_equalities_bounds_and_offset():
    # max x - y + 5  s.t.  x + y = 4,  -1 <= x <= 3,  y free
    res = solve_lp(LPProblem(c=[1, -1], A_eq=[[1, 1]], b_eq=[4], bounds=[(-1, 3), (None, None)],
                             maximize=True, offset=5))
    assert res.value == 7 and res.x == [3, 1]


def test_degenerate_problem_terminates():
    # a classic cycling example for the largest-coefficient rule
    c = [Fraction(-3, 4), 150, Fraction(-1, 50), 6]
    A = [[Fraction(1, 4), -60, Fraction(-1, 25), 9], [Fraction(1, 2), -90, Fraction(-1, 50), 3], [0, 0, 1, 0]]
    res = solve_lp(LPProblem(c=c, A_ub=A, b_ub=[0, 0, 1]))
    assert res.optimal and res.value == Fraction(-1, 20)


def test_redundant_equalities():
    res = solve_lp(LPProblem(c=[1, 2], A_eq=[[1, 1], [2, 2]], b_eq=[1, 2]))
    assert res.value == 1


def _scipy(c, A_ub, b_ub, A_eq, b_eq, bounds):
    return linprog(c, A_ub=A_ub or None, b_ub=b_ub or None, A_eq=A_eq or None, b_eq=b_eq or None,
                   bounds=bounds, method="highs")


small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5), st.integers(0, 4), st.integers(0, 3), st.data())
def test_matches_scipy(nv, n_ub, n_eq, data):
    row = st.lists(small, min_size=nv, max_size=nv)
    c = data.draw(row)
    A_ub = data.draw(st.lists(row, min_size=n_ub, max_size=n_ub))
    b_ub = data.draw(st.lists(small, min_size=n_ub, max_size=n_ub))
    A_eq = data.draw(st.lists(row, min_size=n_eq, max_size=n_eq))
    b_eq = data.draw(st.lists(small, min_size=n_eq, max_size=n_eq))
    bounds = data.draw(st.lists(st.sampled_from([(0, None), (None, None), (-2, 3), (None, 1)]),
                                min_size=nv, max_size=nv))
    res = solve_lp(LPProblem(c, A_eq, b_eq, A_ub, b_ub, bounds))
    f = lambda M: [[float(x) for x in r] for r in M]
    ref = _scipy([float(x) for x in c], f(A_ub), [float(x) for x in b_ub], f(A_eq),
                 [float(x) for x in b_eq], bounds)
    expected = {0: "optimal", 2: "infeasible", 3: "unbounded"}[ref.status]
    assert res.status == expected
    if res.optimal:
        assert float(res.value) == pytest.approx(ref.fun, abs=1e-7)
        x = res.x
        assert all(sum(a * xi for a, xi in zip(r, x)) <= b for r, b in zip(A_ub, b_ub))
        assert all(sum(a * xi for a, xi in zip(r, x)) == b for r, b in zip(A_eq, b_eq))


def test_duals_give_equal_objective():
    rng = np.random.default_rng(7)
    for _ in range(30):
        A = [[Fraction(int(v)) for v in r] for r in rng.integers(0, 4, (3, 4)) + np.eye(3, 4, dtype=int)]
        b = [Fraction(int(v)) for v in rng.integers(1, 6, 3)]
        c = [Fraction(int(v)) for v in rng.integers(1, 5, 4)]
        res = solve_lp(LPProblem(c, A_ub=A, b_ub=b, maximize=True))
        assert res.optimal
        # max c.x, Ax <= b, x >= 0 has dual min b.y, A^T y >= c, y >= 0
        y = res.dual_ub
        assert all(v >= 0 for v in y)
        assert all(sum(A[i][j] * y[i] for i in range(3)) >= c[j] for j in range(4))
        assert sum(bi * yi for bi, yi in zip(b, y)) == res.value
