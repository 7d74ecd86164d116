"""A 4-stage guillotine packer for skewed items.

The pipeline, for items with ``h <= delta_h`` ("wide" side) or
``w <= delta_w`` ("tall" side):

A. round the widths of long wide items (and heights of long tall items)
   by linear grouping;
B. solve a configuration LP that packs each side fractionally into a strip
   made of shelves; every shelf is a row of containers, one per class
   occurrence plus an optional container for short items;
C. treat shelves as sliceable pieces and pack them with greedyPack;
D. put whole items back into the containers greedily and discard the few
   that do not fit; discarded items are packed separately with NFDH/NFDW.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import (ONE, ZERO, InvariantViolation, Item, Layout, Placement, Rect,
                   SkewnessError, ceil, make_layout, rat, total_area)
from .grouping import HEIGHT, WIDTH, lingroup
from .lp import EQ, BasicSolution, Constraint, LinearProgram, solve_lp
from .nfdh import nfdh_bins, nfdh_into_region, nfdh_order
from .s2bp import HALF, Piece, greedy_pack


@dataclass(frozen=True)
class HorizontalConfig:
    """Flag for a short-item container plus a count per (rounded) class size."""

    s0: int
    counts: tuple[int, ...]

    def size(self, sizes) -> Fraction:
        return sum((c * s for c, s in zip(self.counts, sizes)), ZERO)

    def span(self, sizes) -> Fraction:
        """Width of the shelf: the full bin when it has a short-item container."""
        return ONE if self.s0 else self.size(sizes)


def enum_horizontal_configs(distinct_widths: Sequence, allow_small: bool = True):
    """All configurations whose class widths fit side by side in a unit width."""
    widths = [rat(w) for w in distinct_widths]
    if len(set(widths)) != len(widths):
        raise ValueError("class widths must be distinct")
    vectors = []

    def rec(j, room, acc):
        if j == len(widths):
            vectors.append(tuple(acc))
            return
        k = 0
        while k * widths[j] <= room:
            acc.append(k)
            rec(j + 1, room - k * widths[j], acc)
            acc.pop()
            k += 1

    rec(0, ONE, [])
    flags = (0, 1) if allow_small else (0,)
    return [HorizontalConfig(s0, v) for s0 in flags for v in vectors]


@dataclass(frozen=True)
class Container:
    """Rectangle reserved for one class (``type >= 1``) or for short items (``0``)."""

    type: int
    rect: Rect
    bin: int = -1


@dataclass(frozen=True)
class Shelf:
    """One positive LP configuration.

    For a wide shelf ``extent`` is its height and ``span`` its width; a tall
    shelf is the transpose.
    """

    orientation: str
    config: HorizontalConfig
    extent: Fraction
    span: Fraction
    sizes: tuple[Fraction, ...]

    def as_piece(self, pid) -> Piece:
        if self.orientation == "wide":
            return Piece(pid, self.span, self.extent, "wide")
        return Piece(pid, self.extent, self.span, "tall")

    def containers(self, rect: Rect, bin_index=-1) -> list[Container]:
        """Containers of the part of this shelf placed at ``rect``."""
        out = []
        pos = ZERO
        for j, (c, s) in enumerate(zip(self.config.counts, self.sizes)):
            for _ in range(c):
                out.append(Container(j + 1, self._cell(rect, pos, s), bin_index))
                pos += s
        if self.config.s0:
            rest = ONE - pos
            if rest > 0:
                out.append(Container(0, self._cell(rect, pos, rest), bin_index))
        return out

    def _cell(self, rect, pos, size):
        if self.orientation == "wide":
            return Rect(rect.x + pos, rect.y, size, rect.h)
        return Rect(rect.x, rect.y + pos, rect.w, size)


def solve_shelf_lp(classes: Sequence, small_area=ZERO, orientation: str = "wide"):
    """Fractional strip packing by configurations.

    ``classes`` lists ``(size, total extent)`` per class: width and total
    height for wide items. Returns ``(solution, configs, shelves)``.
    """
    sizes = tuple(rat(s) for s, _ in classes)
    totals = [rat(t) for _, t in classes]
    small_area = rat(small_area)
    allow_small = small_area > 0
    configs = [c for c in enum_horizontal_configs(sizes, allow_small)
               if c.s0 or any(c.counts)]
    if not configs:
        sol = BasicSolution((), ZERO, ())
        return sol, configs, []
    n = len(configs)
    rows = []
    for j, total in enumerate(totals):
        coeffs = {k: c.counts[j] for k, c in enumerate(configs) if c.counts[j]}
        rows.append(Constraint(coeffs, EQ, total))
    if allow_small:
        coeffs = {k: 1 - c.size(sizes) for k, c in enumerate(configs) if c.s0}
        rows.append(Constraint(coeffs, EQ, small_area))
    lp = LinearProgram(n, tuple(rows), {k: 1 for k in range(n)})
    sol = solve_lp(lp)
    if not isinstance(sol, BasicSolution):
        raise InvariantViolation(f"shelf LP returned {sol}")
    shelves = []
    for k in sol.support:
        c = configs[k]
        shelf = Shelf(orientation, c, sol.values[k], c.span(sizes), sizes)
        if shelf.span <= HALF:
            raise InvariantViolation("a positive shelf is not longer than 1/2")
        shelves.append(shelf)
    return sol, configs, shelves


@dataclass(frozen=True)
class Skewed4Result:
    layout: Layout
    stats: dict = field(default_factory=dict)

    @property
    def num_bins(self) -> int:
        return self.layout.num_bins


def _split(items, delta_w, delta_h, eps):
    wide, tall, bad = [], [], []
    for it in items:
        if it.h <= delta_h:
            wide.append(it.with_kind("wide"))
        elif it.w <= delta_w:
            tall.append(it.with_kind("tall"))
        else:
            bad.append(it.id)
    if bad:
        raise SkewnessError(bad, delta_w, delta_h)
    wl = [i for i in wide if i.w > eps]
    ws = [i.with_kind("small") for i in wide if i.w <= eps]
    tl = [i for i in tall if i.h > eps]
    ts = [i.with_kind("small") for i in tall if i.h <= eps]
    return wl, ws, tl, ts


def _assign_classes(containers, classes, originals, orientation):
    """Greedy whole-item assignment of class items to same-class containers.

    A container keeps receiving items while its filled extent is below its
    capacity; if the last item overshoots, it is discarded.
    """
    placed, discarded = [], []
    by_type = {}
    for c in containers:
        by_type.setdefault(c.type, []).append(c)
    for j, members in enumerate(classes, start=1):
        if orientation == "wide":
            queue = sorted(members, key=lambda it: (-it.h, it.id))
        else:
            queue = sorted(members, key=lambda it: (-it.w, it.id))
        pos = 0
        for c in by_type.get(j, []):
            if pos >= len(queue):
                break
            cap = c.rect.h if orientation == "wide" else c.rect.w
            filled = ZERO
            while pos < len(queue) and filled < cap:
                it = queue[pos]
                pos += 1
                ext = it.h if orientation == "wide" else it.w
                if filled + ext > cap:
                    discarded.append(it)
                    filled += ext
                    break
                orig = originals[it.id]
                if orientation == "wide":
                    p = Placement(it.id, c.rect.x, c.rect.y + filled, orig.w, orig.h)
                else:
                    p = Placement(it.id, c.rect.x + filled, c.rect.y, orig.w, orig.h)
                placed.append((c.bin, p))
                filled += ext
        discarded.extend(queue[pos:])
    return placed, discarded


def _assign_small(containers, items, transpose):
    """Fill short-item containers by area, then keep the largest fitting prefix."""
    queue = nfdh_order([_T(i) for i in items]) if transpose else nfdh_order(items)
    queue = [i.item if transpose else i for i in queue]
    placed, discarded = [], []
    pos = 0
    for c in containers:
        if c.type != 0 or pos >= len(queue):
            continue
        got, area = [], ZERO
        while pos < len(queue) and area < c.rect.area:
            got.append(queue[pos])
            area += queue[pos].area
            pos += 1
        ps, rest = nfdh_into_region(got, c.rect.w, c.rect.h, c.rect.x, c.rect.y,
                                    transpose=transpose)
        placed.extend((c.bin, p) for p in ps)
        discarded.extend(rest)
    discarded.extend(queue[pos:])
    return placed, discarded


@dataclass(frozen=True)
class _T:
    item: Item

    @property
    def id(self):
        return self.item.id

    @property
    def w(self):
        return self.item.h

    @property
    def h(self):
        return self.item.w


def fill_containers(shelf_bins, shelves_by_piece, wide_classes, tall_classes, wide_small,
                    tall_small, originals):
    """Place whole items into the containers of packed shelves.

    ``shelf_bins`` is the greedyPack result over shelf pieces and
    ``shelves_by_piece`` maps piece id to :class:`Shelf`. Returns
    ``(per-bin placements, wide discards, tall discards, containers)``.
    """
    wide_c, tall_c = [], []
    for b in shelf_bins.layout.bins:
        for p in b.placements:
            shelf = shelves_by_piece[p.item_id]
            cs = shelf.containers(p.rect, b.bin_index)
            (wide_c if shelf.orientation == "wide" else tall_c).extend(cs)
    key = lambda c: (c.bin, c.rect.y, c.rect.x)  # noqa: E731
    wide_c.sort(key=key)
    tall_c.sort(key=key)

    pw, dw = _assign_classes(wide_c, wide_classes, originals, "wide")
    pt, dt = _assign_classes(tall_c, tall_classes, originals, "tall")
    ps, dws = _assign_small(wide_c, wide_small, transpose=True)
    pts, dts = _assign_small(tall_c, tall_small, transpose=False)

    per_bin = [[] for _ in shelf_bins.layout.bins]
    for k, p in itertools.chain(pw, pt, ps, pts):
        per_bin[k].append(p)
    return per_bin, dw + dws, dt + dts, wide_c + tall_c


def _classes(grouped, axis):
    """Rounded items per non-empty group, in group order."""
    by_id = {it.id: it for it in grouped.rounded}
    out = []
    for ids in grouped.groups:
        if ids:
            out.append([by_id[i] for i in ids])
    return out


def _class_table(classes, axis):
    if axis == WIDTH:
        return [(c[0].w, sum((i.h for i in c), ZERO)) for c in classes]
    return [(c[0].h, sum((i.w for i in c), ZERO)) for c in classes]


def skewed4pack(items: Sequence[Item], eps, delta_w, delta_h) -> Skewed4Result:
    """Pack ``(delta_w, delta_h)``-skewed items into 4-stage guillotine bins."""
    eps, delta_w, delta_h = rat(eps), rat(delta_w), rat(delta_h)
    if not 0 < eps < 1 or (1 / eps).denominator != 1:
        raise ValueError("eps must be 1/k for an integer k >= 2")
    if not (0 < delta_w < 1 and 0 < delta_h < 1):
        raise ValueError("deltas must lie in (0, 1)")
    items = list(items)
    originals = {it.id: it for it in items}
    wl, ws, tl, ts = _split(items, delta_w, delta_h, eps)

    gw = lingroup(wl, eps, eps, WIDTH)
    gt = lingroup(tl, eps, eps, HEIGHT)
    wide_classes, tall_classes = _classes(gw, WIDTH), _classes(gt, HEIGHT)

    sol_w, _, shelves_w = solve_shelf_lp(_class_table(wide_classes, WIDTH), total_area(ws),
                                         "wide")
    sol_t, _, shelves_t = solve_shelf_lp(_class_table(tall_classes, HEIGHT), total_area(ts),
                                         "tall")
    for sol, k in ((sol_w, len(wide_classes)), (sol_t, len(tall_classes))):
        if len(sol.support) > 1 / (eps * eps) + 1 or len(sol.support) > k + 1:
            raise InvariantViolation("too many positive shelf configurations")

    pieces, by_piece = [], {}
    for shelf in shelves_w + shelves_t:
        pid = len(pieces)
        pieces.append(shelf.as_piece(pid))
        by_piece[pid] = shelf
    shelf_pack = greedy_pack([p for p in pieces if p.kind == "wide"],
                             [p for p in pieces if p.kind == "tall"])
    m = shelf_pack.num_bins

    per_bin, dw, dt, containers = fill_containers(shelf_pack, by_piece, wide_classes,
                                                  tall_classes, ws, ts, originals)

    area_dw = total_area(dw)
    area_dt = total_area(dt)
    hsum_w = sol_w.objective_value
    wsum_t = sol_t.objective_value
    cap_w = eps * hsum_w + delta_h * (1 + eps) * (m + 1 / (eps * eps))
    cap_t = eps * wsum_t + delta_w * (1 + eps) * (m + 1 / (eps * eps))
    if not area_dw < cap_w or not area_dt < cap_t:
        raise InvariantViolation("discarded area exceeds its bound")

    orig_dw = [originals[i.id] for i in dw]
    orig_dt = [originals[i.id] for i in dt]
    extra_w = nfdh_bins(orig_dw)
    extra_t = nfdh_bins(orig_dt, transpose=True)

    bins, annotations = [], []
    for k, ps in enumerate(per_bin):
        if ps:
            bins.append(sorted(ps, key=lambda p: (p.y, p.x, p.item_id)))
            rec = shelf_pack.bins[k]
            annotations.append({"source": "shelves", "type": rec.type})
    for extra, tag in ((extra_w, "wide-discards"), (extra_t, "tall-discards")):
        for b in extra.bins:
            bins.append(list(b.placements))
            annotations.append({"source": tag})

    wide_pieces = [p for p in pieces if p.kind == "wide"]
    tall_pieces = [p for p in pieces if p.kind == "tall"]
    shelf_area = sum((p.area for p in pieces), ZERO)
    greedy_cap = max(Fraction(ceil(hsum_w)), Fraction(ceil(wsum_t)),
                     Fraction(4, 3) * shelf_area + Fraction(8, 3))
    a_total = total_area(items)
    fopt_surrogate = max(ceil(hsum_w), ceil(wsum_t), ceil(shelf_area))
    nfdh_cap = (2 * total_area(orig_dw) + 1) / (1 - delta_h) + \
        (2 * total_area(orig_dt) + 1) / (1 - delta_w)
    bound_rhs = Fraction(4, 3) * fopt_surrogate + Fraction(8, 3) + nfdh_cap
    if m > greedy_cap:
        raise InvariantViolation("greedyPack used more bins than its bound")
    if len(bins) > bound_rhs:
        raise InvariantViolation("bin count exceeds its bound")

    stats = {
        "m_shelf_bins": m,
        "wide_shelves": len(wide_pieces),
        "tall_shelves": len(tall_pieces),
        "hsum_wide_shelves": hsum_w,
        "wsum_tall_shelves": wsum_t,
        "discard_area_wide": area_dw,
        "discard_area_tall": area_dt,
        "discard_cap_wide": cap_w,
        "discard_cap_tall": cap_t,
        "discarded_wide": len(dw),
        "discarded_tall": len(dt),
        "fopt_surrogate": fopt_surrogate,
        "bound_rhs": bound_rhs,
        "area": a_total,
    }
    meta = {"algorithm": "skewed4pack", "eps": eps, "delta_w": delta_w, "delta_h": delta_h,
            "stats": stats}
    layout = make_layout(bins, meta=meta, annotations=annotations)
    return Skewed4Result(layout, stats)


def theorem_bound(eps, delta_w, delta_h, opt) -> Fraction:
    """The bin bound alpha*(1+eps)*opt + 2*beta, valid against the true optimum."""
    eps, delta_w, delta_h = rat(eps), rat(delta_w), rat(delta_h)
    D = (delta_h / (1 - delta_h) + delta_w / (1 - delta_w)) / 2
    alpha = Fraction(4, 3) * (1 + 4 * D) * (1 + 3 * eps)
    beta = 2 * D * (1 + eps) / (eps * eps) + Fraction(10, 3) + 19 * D / 3 + 16 * D * eps / 3
    return alpha * (1 + eps) * opt + 2 * beta
