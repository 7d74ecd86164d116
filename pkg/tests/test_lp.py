import itertools
from fractions import Fraction as F

from hypothesis import given, strategies as st

from skewpack.lp import (EQ, GE, LE, BasicSolution, Constraint, Infeasible, LinearProgram,
                         Unbounded, solve_lp)


def test_single_lower_bound():
    sol = solve_lp(LinearProgram(1, [Constraint([1], GE, F(5, 2))], [1]))
    assert isinstance(sol, BasicSolution)
    assert sol.values == (F(5, 2),)
    assert sol.support == (0,)


def test_one_configuration_equality():
    sol = solve_lp(LinearProgram(1, [Constraint({0: 1}, EQ, F(5, 2))], {0: 1}))
    assert sol.objective_value == F(5, 2)


def test_infeasible_system():
    lp = LinearProgram(2, [Constraint([1, 1], LE, 1), Constraint([1, 0], GE, 2)])
    sol = solve_lp(lp)
    assert isinstance(sol, Infeasible) and not sol


def test_unbounded_is_flagged():
    lp = LinearProgram(1, [Constraint([1], GE, 1)], [-1])
    assert isinstance(solve_lp(lp), Unbounded)


def test_feasibility_without_objective():
    lp = LinearProgram(2, [Constraint([1, 2], EQ, 3), Constraint([1, 0], LE, 1)])
    sol = solve_lp(lp)
    assert isinstance(sol, BasicSolution)
    x = sol.values
    assert x[0] + 2 * x[1] == 3 and x[0] <= 1


# ------------------------------------------------------------------ brute force


def _solve_square(A, b):
    """Gaussian elimination over the rationals; None if singular."""
    n = len(A)
    M = [list(row) + [rhs] for row, rhs in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [M[r][n] / M[r][r] for r in range(n)]


def _independent_rows(A, b):
    """Row-reduce ``[A | b]``; drops redundant rows, ``(None, None)`` if inconsistent."""
    M = [list(r) + [v] for r, v in zip(A, b)]
    out, col, ncols = [], 0, len(A[0]) if A else 0
    rows = M
    while rows and col < ncols:
        piv = next((r for r in rows if r[col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows = [r for r in rows if r is not piv]
        rows = [[a - r[col] / piv[col] * p for a, p in zip(r, piv)] for r in rows]
        out.append(piv)
        col += 1
    if any(r[-1] != 0 for r in rows):
        return None, None
    return [r[:-1] for r in out], [r[-1] for r in out]


def brute_force(lp):
    """Minimum over all basic feasible solutions of the equality form."""
    n = lp.num_vars
    A, b = [], []
    slack = 0
    rows = list(lp.constraints)
    for c in rows:
        if c.relation != EQ:
            slack += 1
    total = n + slack
    k = 0
    for c in rows:
        row = [F(v) for v in c.coeffs] + [F(0)] * slack
        if c.relation == LE:
            row[n + k] = F(1)
            k += 1
        elif c.relation == GE:
            row[n + k] = F(-1)
            k += 1
        A.append(row)
        b.append(F(c.rhs))
    A, b = _independent_rows(A, b)
    if A is None:
        return None
    m = len(A)
    cost = [F(v) for v in lp.objective] + [F(0)] * slack
    best = None
    for cols in itertools.combinations(range(total), m):
        sub = [[A[r][j] for j in cols] for r in range(m)]
        xs = _solve_square(sub, b)
        if xs is None or any(v < 0 for v in xs):
            continue
        val = sum(cost[j] * v for j, v in zip(cols, xs))
        if best is None or val < best:
            best = val
    return best


small = st.integers(-3, 4).map(F)


@st.composite
def lps(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 4))
    rows = []
    for _ in range(m):
        coeffs = draw(st.lists(small, min_size=n, max_size=n))
        rel = draw(st.sampled_from([LE, GE, EQ]))
        rhs = draw(st.integers(0, 6).map(F))
        rows.append(Constraint(coeffs, rel, rhs))
    obj = draw(st.lists(st.integers(0, 5).map(F), min_size=n, max_size=n))
    return LinearProgram(n, rows, obj)


@given(lps())
def test_agrees_with_vertex_enumeration(lp):
    sol = solve_lp(lp)
    ref = brute_force(lp)
    if ref is None:
        assert isinstance(sol, Infeasible)
        return
    assert isinstance(sol, BasicSolution)
    assert sol.objective_value == ref
    assert len(sol.support) <= len(lp.constraints)
    x = sol.values
    for c in lp.constraints:
        lhs = sum(F(a) * v for a, v in zip(c.coeffs, x))
        assert {LE: lhs <= c.rhs, GE: lhs >= c.rhs, EQ: lhs == c.rhs}[c.relation]
    assert all(v >= 0 for v in x)
    assert sol.support == tuple(j for j, v in enumerate(x) if v != 0)
