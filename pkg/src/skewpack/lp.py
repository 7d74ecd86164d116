"""Exact two-phase simplex over the rationals.

Rows are scaled to integers and the basis inverse is kept as an integer
matrix over a common denominator (the integer-preserving update of Edmonds),
so no Fraction arithmetic happens inside the pivot loop. Pivoting follows
Bland's rule, which terminates without cycling.

The returned primal solution is basic, hence has at most as many nonzero
entries as there are constraints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from .core import InvariantViolation, ZERO, rat

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = {LE: LE, "≤": LE, EQ: EQ, "==": EQ, GE: GE, "≥": GE}


@dataclass(frozen=True)
class Constraint:
    """``coeffs · x  relation  rhs``; ``coeffs`` is dense or a sparse index map."""

    coeffs: Sequence | Mapping
    relation: str
    rhs: Fraction


@dataclass(frozen=True)
class LinearProgram:
    """Minimize ``objective · x`` over ``x >= 0`` subject to ``constraints``.

    ``objective=None`` means a pure feasibility problem (all-zero cost).
    """

    num_vars: int
    constraints: tuple
    objective: Sequence | Mapping | None = None

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            if c.relation not in _RELATIONS:
                raise ValueError(f"unknown relation {c.relation!r}")
            if not isinstance(c.coeffs, Mapping) and len(c.coeffs) != self.num_vars:
                raise ValueError("constraint row length differs from the variable count")


@dataclass(frozen=True)
class BasicSolution:
    values: tuple
    objective_value: Fraction
    support: tuple
    basis: tuple = ()


@dataclass(frozen=True)
class Infeasible:
    reason: str = "infeasible"

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Unbounded:
    reason: str = "unbounded"

    def __bool__(self):
        return False


def _sparse(coeffs, n) -> dict:
    if isinstance(coeffs, Mapping):
        out = {}
        for j, v in coeffs.items():
            if not 0 <= j < n:
                raise ValueError(f"coefficient index {j} out of range")
            v = rat(v)
            if v:
                out[j] = v
        return out
    return {j: rat(v) for j, v in enumerate(coeffs) if v}


class _Tableau:
    """Revised simplex state: basis inverse = M / d with integer M and d > 0."""

    def __init__(self, rows, rhs, basis, ncols):
        self.m = len(rows)
        self.cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            for j, v in row.items():
                self.cols[j][i] = v
        self.M = [[1 if i == k else 0 for k in range(self.m)] for i in range(self.m)]
        self.d = 1
        self.beta = list(rhs)
        self.basis = list(basis)
        self.pivots = 0

    def column(self, j):
        col = self.cols[j]
        return [sum(Mi[k] * v for k, v in col.items()) for Mi in self.M]

    def pivot(self, r, q, u):
        d, M, beta = self.d, self.M, self.beta
        ur = u[r]
        Mr, br = M[r], beta[r]
        for i in range(self.m):
            if i == r:
                continue
            ui = u[i]
            Mi = M[i]
            if ui:
                M[i] = [(a * ur - ui * b) // d for a, b in zip(Mi, Mr)]
                beta[i] = (beta[i] * ur - ui * br) // d
            elif ur != d:
                M[i] = [a * ur // d for a in Mi]
                beta[i] = beta[i] * ur // d
        self.d = ur
        if ur < 0:
            self.d = -ur
            self.M = [[-a for a in Mi] for Mi in M]
            self.beta = [-b for b in beta]
        self.basis[r] = q
        self.pivots += 1

    def run(self, cost, allowed):
        """Bland-rule primal simplex. Returns 'optimal' or 'unbounded'."""
        m = self.m
        while True:
            basic = set(self.basis)
            cb = [cost[b] for b in self.basis]
            y = [sum(cb[i] * self.M[i][k] for i in range(m) if cb[i]) for k in range(m)]
            entering = None
            for j in allowed:
                if j in basic:
                    continue
                red = self.d * cost[j] - sum(y[k] * v for k, v in self.cols[j].items())
                if red < 0:
                    entering = j
                    break
            if entering is None:
                return "optimal"
            u = self.column(entering)
            leave = None
            for i in range(m):
                if u[i] <= 0:
                    continue
                if leave is None:
                    leave = i
                    continue
                # compare beta[i]/u[i] with beta[leave]/u[leave]
                lhs = self.beta[i] * u[leave]
                rhs = self.beta[leave] * u[i]
                if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[leave]):
                    leave = i
            if leave is None:
                return "unbounded"
            self.pivot(leave, entering, u)

    def values(self, ncols):
        x = [ZERO] * ncols
        for i, b in enumerate(self.basis):
            x[b] = Fraction(self.beta[i], self.d)
        return x


def solve_lp(lp: LinearProgram) -> BasicSolution | Infeasible | Unbounded:
    """Solve ``lp`` exactly. Returns an optimal basic solution or a status object."""
    n = lp.num_vars
    rows, rels, rhs = [], [], []
    for c in lp.constraints:
        row = _sparse(c.coeffs, n)
        rel = _RELATIONS[c.relation]
        b = rat(c.rhs)
        if b < 0:
            row = {j: -v for j, v in row.items()}
            b = -b
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        scale = lcm(b.denominator, *(v.denominator for v in row.values()))
        rows.append({j: int(v * scale) for j, v in row.items()})
        rels.append(rel)
        rhs.append(int(b * scale))
    m = len(rows)

    objective = _sparse(lp.objective, n) if lp.objective is not None else {}
    cscale = lcm(1, *(v.denominator for v in objective.values()))
    cost_struct = [0] * n
    for j, v in objective.items():
        cost_struct[j] = int(v * cscale)

    # columns: structural | slack/surplus | artificial
    ncols = n
    basis = [None] * m
    artificial = []
    for i, rel in enumerate(rels):
        if rel == LE:
            rows[i][ncols] = 1
            basis[i] = ncols
            ncols += 1
        elif rel == GE:
            rows[i][ncols] = -1
            ncols += 1
    for i, rel in enumerate(rels):
        if rel != LE:
            rows[i][ncols] = 1
            basis[i] = ncols
            artificial.append(ncols)
            ncols += 1
    first_art = ncols - len(artificial)

    tab = _Tableau(rows, rhs, basis, ncols)
    if artificial:
        cost1 = [0] * first_art + [1] * len(artificial)
        tab.run(cost1, range(ncols))
        if any(tab.beta[i] for i, b in enumerate(tab.basis) if b >= first_art):
            return Infeasible()
        # pivot zero-valued artificials out where a real column can replace them
        for r in range(m):
            if tab.basis[r] < first_art:
                continue
            basic = set(tab.basis)
            for j in range(first_art):
                if j in basic:
                    continue
                u = tab.column(j)
                if u[r]:
                    tab.pivot(r, j, u)
                    break

    cost2 = cost_struct + [0] * (ncols - n)
    status = tab.run(cost2, range(first_art))
    if status == "unbounded":
        return Unbounded()

    x = tab.values(ncols)
    values = tuple(x[:n])
    for i, row in enumerate(rows):
        lhs = sum((x[j] * v for j, v in row.items()), ZERO)
        if lhs != rhs[i]:
            raise InvariantViolation("simplex result violates a constraint")
    support = tuple(j for j in range(n) if values[j])
    if len(support) > m:
        raise InvariantViolation("basic solution has more nonzeros than constraints")
    obj = sum((v * values[j] for j, v in objective.items()), ZERO)
    return BasicSolution(values, obj, support, tuple(tab.basis))


def build_lp(num_vars, rows, objective=None) -> LinearProgram:
    """Convenience constructor from ``(coeffs, relation, rhs)`` triples."""
    return LinearProgram(num_vars, tuple(Constraint(c, r, rat(b)) for c, r, b in rows),
                         objective)
