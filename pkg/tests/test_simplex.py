import random
from fractions import Fraction as F

import pytest

from gramlab.exceptions import SimplexError
from gramlab.simplex import LinearProgram, Rel, solve_lp
from oracles import brute_lp_max_eq


def test_textbook_max():
    # max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18, x,y >= 0 -> 36 at (2,6)
    lp = LinearProgram(num_vars=2, objective=(3, 5), maximize=True)
    lp.add((1, 0), Rel.LE, 4)
    lp.add((0, 2), Rel.LE, 12)
    lp.add((3, 2), Rel.LE, 18)
    sol = solve_lp(lp)
    assert sol.value == 36
    assert sol.x == (F(2), F(6))


def test_equality_and_free_vars():
    # min x + y st x - y = 1, x + y >= 3, x free, y >= 0 -> (2, 1), value 3
    lp = LinearProgram(num_vars=2, objective=(1, 1), free=frozenset({0}))
    lp.add((1, -1), Rel.EQ, 1)
    lp.add((1, 1), Rel.GE, 3)
    sol = solve_lp(lp)
    assert sol.value == 3
    assert sol.x == (F(2), F(1))


def test_negative_rhs_normalization():
    # min x st -x <= -5 -> x >= 5
    lp = LinearProgram(num_vars=1, objective=(1,))
    lp.add((-1,), Rel.LE, -5)
    assert solve_lp(lp).value == 5


def test_free_variable_negative_optimum():
    lp = LinearProgram(num_vars=1, objective=(1,), free=frozenset({0}))
    lp.add((1,), Rel.GE, F(-7, 3))
    assert solve_lp(lp).value == F(-7, 3)


def test_infeasible_raises():
    lp = LinearProgram(num_vars=1, objective=(1,))
    lp.add((1,), Rel.LE, 1)
    lp.add((1,), Rel.GE, 2)
    with pytest.raises(SimplexError):
        solve_lp(lp)


def test_unbounded_raises():
    lp = LinearProgram(num_vars=1, objective=(1,), maximize=True)
    lp.add((1,), Rel.GE, 0)
    with pytest.raises(SimplexError):
        solve_lp(lp)


def test_redundant_equalities_handled():
    lp = LinearProgram(num_vars=2, objective=(1, 2), maximize=True)
    lp.add((1, 1), Rel.EQ, 1)
    lp.add((2, 2), Rel.EQ, 2)  # same hyperplane
    sol = solve_lp(lp)
    assert sol.value == 2 and sol.x == (F(0), F(1))


def test_degenerate_vertices_terminate():
    # many constraints tight at the optimum
    lp = LinearProgram(num_vars=2, objective=(1, 1), maximize=True)
    lp.add((1, 0), Rel.LE, 1)
    lp.add((0, 1), Rel.LE, 1)
    lp.add((1, 1), Rel.LE, 2)
    lp.add((2, 1), Rel.LE, 3)
    lp.add((1, 2), Rel.LE, 3)
    assert solve_lp(lp).value == 2


def test_random_eq_lps_match_vertex_enumeration():
    rng = random.Random(20260810)
    for trial in range(40):
        nrows = rng.randint(1, 3)
        ncols = rng.randint(nrows + 1, 6)
        a = [[F(rng.randint(-4, 4)) for _ in range(ncols)] for _ in range(nrows)]
        # build a feasible rhs from a random nonnegative point
        x0 = [F(rng.randint(0, 3)) for _ in range(ncols)]
        b = [sum((ai * xi for ai, xi in zip(row, x0)), F(0)) for row in a]
        c = [F(rng.randint(-5, 5)) for _ in range(ncols)]
        # keep the objective bounded: add a simplex-style mass cap
        a.append([F(1)] * ncols)
        b.append(sum(x0, F(0)) + 1)
        lp = LinearProgram(num_vars=ncols, objective=c, maximize=True)
        for row, rhs in zip(a, b):
            lp.add(row, Rel.EQ, rhs)
        try:
            expected = brute_lp_max_eq(c, a, b)
        except AssertionError:
            continue
        assert solve_lp(lp).value == expected, f"trial {trial}"


def test_solution_is_exact_rational():
    lp = LinearProgram(num_vars=2, objective=(1, 3), maximize=True)
    lp.add((3, 7), Rel.LE, F(1, 3))
    lp.add((1, 0), Rel.LE, F(1, 11))
    sol = solve_lp(lp)
    assert sol.x[1] == (F(1, 3) - 3 * F(1, 11)) / 7 + F(0)
    assert sol.value == F(1) * sol.x[0] + 3 * sol.x[1]
