"""Feasibility programs that fill compartments with wide and tall items.

For the wide side let ``w'_1..w'_p`` be the distinct widths of wide
compartments, ``h(U_j)`` their total height, and ``w_1..w_r`` the distinct
rounded item widths with total heights ``h(W_k)``. A configuration
``(C_0; C_1..C_r)`` puts ``C_k`` items of width ``w_k`` side by side in a
compartment of width ``w'_{C_0}``. The program asks for heights ``x_C >= 0``
with

    sum_C C_k x_C >= h(W_k)            for every item class k
    sum_{C_0 = j} x_C <= h(U_j)        for every compartment class j

The tall side is the transpose. Vertex solutions are returned; the solver
minimises the total configuration height so the answer is unique.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..core import ZERO
from ..lp import GE, LE, BasicSolution, Constraint, Infeasible, LinearProgram, solve_lp
from .compartments import TALL, WIDE


@dataclass(frozen=True)
class Config:
    """Items side by side in one compartment class.

    ``c0`` indexes the compartment sizes, ``counts`` the item classes. For
    tall configurations read widths as heights.
    """

    c0: int
    counts: tuple[int, ...]

    def size(self, sizes) -> Fraction:
        return sum((c * s for c, s in zip(self.counts, sizes)), ZERO)


WideConfig = Config
TallConfig = Config


def count_vectors(sizes, cap):
    """All non-zero count vectors with ``sum counts*sizes <= cap``, lexicographic."""
    out = []

    def rec(j, room, acc):
        if j == len(sizes):
            if any(acc):
                out.append(tuple(acc))
            return
        k = 0
        while k * sizes[j] <= room:
            acc.append(k)
            rec(j + 1, room - k * sizes[j], acc)
            acc.pop()
            k += 1

    rec(0, cap, [])
    return out


@dataclass(frozen=True)
class SideSolution:
    """Solution of one side: ``values[k]`` is the extent of ``configs[k]``."""

    configs: tuple[Config, ...]
    values: tuple[Fraction, ...]
    comp_sizes: tuple[Fraction, ...]  # w'_j (wide) or h'_j (tall)
    item_sizes: tuple[Fraction, ...]  # w_k (wide) or h_k (tall)
    support: tuple[int, ...] = ()
    rows: int = 0

    def positive(self):
        return [(self.configs[k], self.values[k]) for k in self.support]


@dataclass(frozen=True)
class Feasible:
    wide: SideSolution
    tall: SideSolution
    meta: dict = field(default_factory=dict)

    def __bool__(self):
        return True


def compartment_classes(P, kind):
    """Distinct compartment sizes (width for wide, height for tall) and totals."""
    totals = {}
    for _, c in P.all():
        if c.kind != kind:
            continue
        size, extent = (c.rect.w, c.rect.h) if kind == WIDE else (c.rect.h, c.rect.w)
        totals[size] = totals.get(size, ZERO) + extent
    sizes = tuple(sorted(totals))
    return sizes, tuple(totals[s] for s in sizes)


def solve_side(classes, comp_sizes, comp_totals):
    """One feasibility program; ``classes`` lists ``(item size, total extent)``."""
    item_sizes = tuple(s for s, _ in classes)
    demands = [t for _, t in classes]
    if not classes:
        return SideSolution((), (), tuple(comp_sizes), (), (), 0)
    configs = [Config(j, v) for j, cap in enumerate(comp_sizes)
               for v in count_vectors(item_sizes, cap)]
    if not configs:
        return Infeasible("no compartment fits an item")
    rows = []
    for k, d in enumerate(demands):
        rows.append(Constraint({i: c.counts[k] for i, c in enumerate(configs) if c.counts[k]},
                               GE, d))
    for j, h in enumerate(comp_totals):
        rows.append(Constraint({i: 1 for i, c in enumerate(configs) if c.c0 == j}, LE, h))
    lp = LinearProgram(len(configs), tuple(rows), {i: 1 for i in range(len(configs))})
    sol = solve_lp(lp)
    if not isinstance(sol, BasicSolution):
        return Infeasible("compartments cannot hold the items")
    if len(sol.support) > len(comp_sizes) + len(classes):
        raise AssertionError("vertex has too many positive entries")
    return SideSolution(tuple(configs), tuple(sol.values), tuple(comp_sizes), item_sizes,
                        tuple(sol.support), len(rows))


def solve_feasibility(wide_classes, tall_classes, P):
    """Solve both sides for the packing ``P``; returns :class:`Feasible` or Infeasible.

    ``wide_classes`` lists ``(rounded width, total height)`` per class and
    ``tall_classes`` ``(rounded height, total width)``.
    """
    ws, wt = compartment_classes(P, WIDE)
    xs = solve_side(list(wide_classes), ws, wt)
    if not isinstance(xs, SideSolution):
        return xs
    hs, ht = compartment_classes(P, TALL)
    ys = solve_side(list(tall_classes), hs, ht)
    if not isinstance(ys, SideSolution):
        return ys
    return Feasible(xs, ys)
