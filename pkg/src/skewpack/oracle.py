"""Exact minimum bin counts for tiny instances.

Single-bin feasibility uses normal patterns: an item's x coordinate is a sum
of widths of other items (likewise for y), which loses no packings. The
guillotine variant computes, for a height ``H`` and a multiset of items,
the least width of an ``? x H`` region that admits a guillotine packing,
recursing over the first cut.

Bin assignment is a depth-first search over partitions with the usual
symmetry breaking; feasibility answers are cached per item multiset.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .core import ONE, ZERO, Instance, Placement, SkewpackError, ceil, make_layout, total_area
from .nfdh import nfdh_bins

#: default search limit on the number of items
MAX_ITEMS = 12

class ExceedsMax(SkewpackError):
    """The optimum is larger than the caller's ``max_bins``."""

    def __init__(self, max_bins, lower_bound=None):
        self.max_bins = max_bins
        self.lower_bound = lower_bound
        super().__init__(f"optimum exceeds {max_bins} bins")


class OracleBudgetExceeded(SkewpackError):
    """The search visited more nodes than allowed."""


class _Budget:
    """Node counter shared by the partition search and the one-bin searches."""

    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise OracleBudgetExceeded(f"more than {self.limit} search nodes")


#: budget of the running oracle call; unlimited outside of one
_budget = _Budget(None)


def _subset_sums(values, cap):
    sums = {ZERO}
    for v in values:
        sums |= {s + v for s in sums if s + v <= cap}
    return sorted(sums)


# ---------------------------------------------------------------- one bin, free


def _fits_free(dims):
    """Placements ``[(x, y)]`` for ``dims`` (sorted tuple of (w, h)) in a unit bin, or None."""
    if sum((w * h for w, h in dims), ZERO) > 1:
        return None
    if any(w > 1 or h > 1 for w, h in dims):
        return None
    n = len(dims)
    order = sorted(range(n), key=lambda i: (-dims[i][0] * dims[i][1], -dims[i][0], i))
    xs, ys = {}, {}
    for i in range(n):
        others = [dims[j] for j in range(n) if j != i]
        xs[i] = _subset_sums([w for w, _ in others], 1 - dims[i][0])
        ys[i] = _subset_sums([h for _, h in others], 1 - dims[i][1])
    placed = {}

    def ok(i, x, y):
        w, h = dims[i]
        for j, (px, py) in placed.items():
            pw, ph = dims[j]
            if x < px + pw and px < x + w and y < py + ph and py < y + h:
                return False
        return True

    def rec(pos, prev_same):
        if pos == n:
            return True
        i = order[pos]
        same = pos > 0 and dims[order[pos - 1]] == dims[i]
        for x in xs[i]:
            for y in ys[i]:
                if same and (x, y) <= prev_same:
                    continue  # identical items: positions in increasing order
                _budget.tick()
                if ok(i, x, y):
                    placed[i] = (x, y)
                    if rec(pos + 1, (x, y)):
                        return True
                    del placed[i]
        return False

    if rec(0, None):
        return tuple(placed[i] for i in range(n))
    return None


# ---------------------------------------------------------------- one bin, guillotine


def _sub_multisets(dims):
    """Pairs (A, B) splitting a sorted tuple ``dims``; A holds a copy of ``dims[0]``."""
    kinds = sorted(set(dims))
    counts = [dims.count(k) for k in kinds]
    first = kinds.index(dims[0])
    ranges = [range(1 if t == first else 0, c + 1) for t, c in enumerate(counts)]
    for pick in itertools.product(*ranges):
        if sum(pick) == len(dims):
            continue
        a = tuple(sorted(itertools.chain.from_iterable([k] * p for k, p in zip(kinds, pick))))
        b = tuple(sorted(itertools.chain.from_iterable(
            [k] * (c - p) for k, c, p in zip(kinds, counts, pick))))
        yield a, b


@lru_cache(maxsize=None)
def _gmin(H, dims):
    """Least width of a height-``H`` region packing ``dims`` by guillotine cuts.

    Returns ``(width, plan)`` or ``(None, None)``. Plans are
    ``("leaf", dim)``, ``("v", wa, plan_a, plan_b)`` and
    ``("h", c, plan_a, plan_b)`` with the second part at offset ``wa`` or ``c``.
    """
    if len(dims) == 1:
        w, h = dims[0]
        return (w, ("leaf", dims[0])) if h <= H else (None, None)
    _budget.tick()
    best_w, best_plan = None, None
    for a, b in _sub_multisets(dims):
        wa, pa = _gmin(H, a)
        if wa is None:
            continue
        wb, pb = _gmin(H, b)
        if wb is not None and (best_w is None or wa + wb < best_w):
            best_w, best_plan = wa + wb, ("v", wa, pa, pb)
        for c in _subset_sums([h for _, h in a], H):
            if c == 0 or c == H:
                continue
            wa2, pa2 = _gmin(c, a)
            if wa2 is None:
                continue
            wb2, pb2 = _gmin(H - c, b)
            if wb2 is None:
                continue
            width = max(wa2, wb2)
            if best_w is None or width < best_w:
                best_w, best_plan = width, ("h", c, pa2, pb2)
    return best_w, best_plan


def _fits_guillotine(dims):
    if sum((w * h for w, h in dims), ZERO) > 1:
        return None
    w, plan = _gmin(ONE, dims)
    if w is None or w > 1:
        return None
    out = []

    def walk(plan, x, y):
        if plan[0] == "leaf":
            out.append((plan[1], x, y))
        elif plan[0] == "v":
            walk(plan[2], x, y)
            walk(plan[3], x + plan[1], y)
        else:
            walk(plan[2], x, y)
            walk(plan[3], x, y + plan[1])

    walk(plan, ZERO, ZERO)
    # match positions back to the sorted dims tuple
    pos = []
    pool = list(out)
    for d in dims:
        k = next(t for t, (dd, _, _) in enumerate(pool) if dd == d)
        pos.append(pool.pop(k)[1:])
    return tuple(pos)


# ---------------------------------------------------------------- partition search


def oracle_opt(instance, guillotine: bool = False, max_bins: int | None = None,
               node_limit: int | None = 200000, max_items: int = MAX_ITEMS):
    """Exact optimum ``(bins, layout)`` for a tiny instance.

    Raises :class:`ExceedsMax` when more than ``max_bins`` bins are needed
    and :class:`OracleBudgetExceeded` when ``node_limit`` is hit. Nodes of
    the one-bin placement searches count towards the limit.
    """
    global _budget
    outer, _budget = _budget, _Budget(node_limit)
    try:
        return _oracle(instance, guillotine, max_bins, max_items)
    finally:
        _budget = outer


def _oracle(instance, guillotine, max_bins, max_items):
    items = list(instance.items if isinstance(instance, Instance) else instance)
    n = len(items)
    if n > max_items:
        raise ValueError(f"oracle is limited to {max_items} items, got {n}")
    if n == 0:
        return 0, make_layout([], meta={"algorithm": "oracle", "guillotine": guillotine})
    fits = _fits_guillotine if guillotine else _fits_free
    cache = {}

    def feasible(dims):
        key = tuple(sorted(dims))
        if key not in cache:
            cache[key] = fits(key)
        return cache[key]

    big = sum(1 for it in items if it.w > Fraction(1, 2) and it.h > Fraction(1, 2))
    lower = max(ceil(total_area(items)), big, 1)
    meta = {"algorithm": "oracle", "guillotine": guillotine}

    quick = nfdh_bins(items)
    if quick.num_bins == lower:
        if max_bins is not None and lower > max_bins:
            raise ExceedsMax(max_bins, lower)
        return lower, _with_meta(quick, meta)

    order = sorted(items, key=lambda it: (-it.area, -it.w, -it.h, it.id))
    upper = quick.num_bins if max_bins is None else min(quick.num_bins, max_bins + 1)
    def search(m):
        bins = []

        def rec(k):
            _budget.tick()
            if k == len(order):
                return True
            it = order[k]
            seen = set()
            for b in bins:
                key = tuple(sorted((i.w, i.h) for i in b))
                if key in seen:
                    continue
                seen.add(key)
                trial = [(i.w, i.h) for i in b] + [(it.w, it.h)]
                if feasible(trial) is not None:
                    b.append(it)
                    if rec(k + 1):
                        return True
                    b.pop()
            if len(bins) < m:
                bins.append([it])
                if rec(k + 1):
                    return True
                bins.pop()
            return False

        return bins if rec(0) else None

    for m in range(lower, upper):
        found = search(m)
        if found is not None:
            return m, _layout_from_bins(found, feasible, meta)
    if max_bins is not None and quick.num_bins > max_bins:
        raise ExceedsMax(max_bins, lower)
    return quick.num_bins, _with_meta(quick, meta)


def _with_meta(layout, meta):
    return make_layout([b.placements for b in layout.bins], meta=meta)


def _layout_from_bins(bins, feasible, meta):
    out = []
    for b in bins:
        members = sorted(b, key=lambda i: ((i.w, i.h), i.id))
        dims = tuple((i.w, i.h) for i in members)
        pos = feasible(dims)
        out.append([Placement(it.id, x, y, it.w, it.h) for it, (x, y) in zip(members, pos)])
    return make_layout(out, meta=meta)
