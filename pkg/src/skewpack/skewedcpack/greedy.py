"""Whole-item packing into compartments guided by a feasibility solution.

Each compartment class is treated as one long strip: the compartments of
that class, in (bin, y, x) order, stacked end to end. Positive
configurations are laid along the strip in turn; a configuration running
past the end of a compartment continues in the next one, so it may be
split into several shelves. A shelf of configuration ``C`` holds ``C_k``
containers of item class ``k`` and, if room is left, one container for
small items.

Wide and tall items are assigned to containers of their class until a
container overflows; the overflowing item is discarded. Small items go to
the small containers and to the free space outside compartments, by area
first and then by the longest prefix that NFDH can place.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..core import ONE, ZERO, InvariantViolation, Rect, decompose_empty_space, total_area
from ..nfdh import nfdh_into_region, nfdh_order
from ..skewed4pack import Container, _assign_classes
from .compartments import TALL, WIDE
from .feasibility import Feasible
from .grid import GridT


@dataclass(frozen=True)
class CShelf:
    bin: int
    rect: Rect
    kind: str
    config: object


@dataclass(frozen=True)
class GreedyResult:
    bins: tuple[tuple, ...]  # placements per bin of P
    discarded: tuple  # items of D (rounded copies)
    shelves: tuple[CShelf, ...]
    small_containers: tuple[Container, ...]
    discard_area: Fraction
    discard_bound: Fraction


def discard_bound(grid: GridT, eps2, m: int) -> Fraction:
    """Upper bound on the area the greedy step may discard with ``m`` bins."""
    T = grid.size
    ee = grid.eps * grid.eps1
    return 52 * T * eps2 * m / grid.eps1 + 4 * eps2 * (Fraction(T * T, 2) + (6 * T + 2) / ee)


def _lay_shelves(P, side, kind):
    """Cut every positive configuration of ``side`` into shelves."""
    comps = sorted(((b, c) for b, c in P.all() if c.kind == kind),
                   key=lambda bc: (bc[0], bc[1].rect.y, bc[1].rect.x))
    by_class = {}
    for b, c in comps:
        size = c.rect.w if kind == WIDE else c.rect.h
        by_class.setdefault(side.comp_sizes.index(size), []).append((b, c))
    shelves = []
    for j, members in sorted(by_class.items()):
        k, used = 0, ZERO
        for cfg, amount in side.positive():
            if cfg.c0 != j:
                continue
            while amount > 0:
                if k >= len(members):
                    raise InvariantViolation("configurations exceed their compartments")
                b, c = members[k]
                r = c.rect
                length = r.h if kind == WIDE else r.w
                take = min(length - used, amount)
                if kind == WIDE:
                    rect = Rect(r.x, r.y + used, r.w, take)
                else:
                    rect = Rect(r.x + used, r.y, take, r.h)
                shelves.append(CShelf(b, rect, kind, cfg))
                amount -= take
                used += take
                if used == length:
                    k, used = k + 1, ZERO
    return shelves


def _shelf_containers(shelf: CShelf, item_sizes):
    out = []
    r = shelf.rect
    pos = ZERO
    span = r.w if shelf.kind == WIDE else r.h
    for j, (count, size) in enumerate(zip(shelf.config.counts, item_sizes)):
        for _ in range(count):
            cell = (Rect(r.x + pos, r.y, size, r.h) if shelf.kind == WIDE
                    else Rect(r.x, r.y + pos, r.w, size))
            out.append(Container(j + 1, cell, shelf.bin))
            pos += size
    if pos < span:
        cell = (Rect(r.x + pos, r.y, span - pos, r.h) if shelf.kind == WIDE
                else Rect(r.x, r.y + pos, r.w, span - pos))
        out.append(Container(0, cell, shelf.bin))
    return out


def greedy_cpack(P, solution: Feasible, wide_classes, tall_classes, small, originals,
                 grid: GridT, eps2) -> GreedyResult:
    """Pack whole items into the compartments of ``P``.

    ``wide_classes`` and ``tall_classes`` are lists of rounded items per
    class, aligned with the item sizes of the two sides of ``solution``.
    ``originals`` maps ids to the unrounded items that are actually placed.
    """
    shelves_w = _lay_shelves(P, solution.wide, WIDE)
    shelves_t = _lay_shelves(P, solution.tall, TALL)
    wide_c = [c for s in shelves_w for c in _shelf_containers(s, solution.wide.item_sizes)]
    tall_c = [c for s in shelves_t for c in _shelf_containers(s, solution.tall.item_sizes)]
    key = lambda c: (c.bin, c.rect.y, c.rect.x)  # noqa: E731
    wide_c.sort(key=key)
    tall_c.sort(key=key)

    pw, dw = _assign_classes(wide_c, wide_classes, originals, "wide")
    pt, dt = _assign_classes(tall_c, tall_classes, originals, "tall")

    small_c = [c for c in wide_c + tall_c if c.type == 0]
    for b, comps in enumerate(P.bins):
        for r in decompose_empty_space(ONE, ONE, [c.rect for c in comps]):
            small_c.append(Container(0, r, b))
    small_c.sort(key=key)
    ps, ds = _assign_small(small_c, small, originals)

    bins = [[] for _ in P.bins]
    for b, p in itertools.chain(pw, pt, ps):
        bins[b].append(p)
    D = tuple(dw + dt + ds)
    area = total_area(D)
    bound = discard_bound(grid, eps2, P.num_bins)
    if not area < bound:
        raise InvariantViolation(f"greedy discards {area} exceed the bound {bound}")
    return GreedyResult(tuple(tuple(sorted(b, key=lambda p: (p.y, p.x, p.item_id)))
                              for b in bins),
                        D, tuple(shelves_w + shelves_t), tuple(small_c), area, bound)


def _assign_small(containers, items, originals):
    queue = nfdh_order(items)
    placed, rest = [], []
    pos = 0
    for c in containers:
        if pos >= len(queue):
            break
        got, area = [], ZERO
        while pos < len(queue) and area < c.rect.area:
            got.append(queue[pos])
            area += queue[pos].area
            pos += 1
        ps, left = nfdh_into_region([originals[i.id] for i in got], c.rect.w, c.rect.h,
                                    c.rect.x, c.rect.y)
        placed.extend((c.bin, p) for p in ps)
        rest.extend(left)
    rest.extend(queue[pos:])
    return placed, rest
