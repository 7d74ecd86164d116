"""Next-Fit Decreasing Height shelf packing and its transpose (NFDW).

Items are sorted by height (ties: wider first, then smaller id) and placed
left to right on shelves; a shelf is closed as soon as the next item does not
fit beside the previous one. With ``transpose=True`` the same procedure runs
on the transposed items and the result is transposed back, which gives
NFDW: columns filled bottom to top, sorted by width.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import ONE, ZERO, Layout, Placement, StructuralError, make_layout, rat


@dataclass(frozen=True)
class _T:
    """Transposed view of an item."""

    id: int
    w: Fraction
    h: Fraction


def _view(items, transpose):
    if transpose:
        return [_T(i.id, i.h, i.w) for i in items]
    return list(items)


def nfdh_order(items) -> list:
    return sorted(items, key=lambda i: (-i.h, -i.w, i.id))


@dataclass(frozen=True)
class Shelf:
    y_base: Fraction
    height: Fraction
    placements: tuple[Placement, ...]


@dataclass(frozen=True)
class ShelfPacking:
    shelves: tuple[Shelf, ...]
    total_height: Fraction
    strip_width: Fraction
    transposed: bool = False

    @property
    def placements(self) -> list[Placement]:
        return [p for s in self.shelves for p in s.placements]


def _shelves(items, width):
    """Run NFDH on an already sorted list; yields lists of (item, x) per shelf."""
    shelf, used = [], ZERO
    for it in items:
        if shelf and used + it.w > width:
            yield shelf
            shelf, used = [], ZERO
        shelf.append((it, used))
        used += it.w
    if shelf:
        yield shelf


def _flip(p: Placement, transpose: bool) -> Placement:
    return p.transposed() if transpose else p


def nfdh_strip(items: Sequence, strip_width=ONE, transpose: bool = False) -> ShelfPacking:
    """Pack ``items`` into a strip of the given width and unbounded height."""
    strip_width = rat(strip_width)
    view = nfdh_order(_view(items, transpose))
    for it in view:
        if it.w > strip_width:
            raise StructuralError(f"item {it.id} is wider than the strip")
    shelves, y = [], ZERO
    for row in _shelves(view, strip_width):
        height = row[0][0].h
        placed = tuple(_flip(Placement(it.id, x, y, it.w, it.h), transpose) for it, x in row)
        shelves.append(Shelf(y, height, placed))
        y += height
    return ShelfPacking(tuple(shelves), y, strip_width, transpose)


def nfdh_bins(items: Sequence, transpose: bool = False, meta=None) -> Layout:
    """Pack items into unit bins: NFDH shelves, stacked into bins by next fit."""
    view = nfdh_order(_view(items, transpose))
    for it in view:
        if it.w > 1 or it.h > 1:
            raise StructuralError(f"item {it.id} does not fit in a unit bin")
    bins, current, y = [], [], ZERO
    for row in _shelves(view, ONE):
        height = row[0][0].h
        if current and y + height > 1:
            bins.append(current)
            current, y = [], ZERO
        current.extend(_flip(Placement(it.id, x, y, it.w, it.h), transpose) for it, x in row)
        y += height
    if current:
        bins.append(current)
    info = {"algorithm": "nfdw" if transpose else "nfdh"}
    info.update(meta or {})
    return make_layout(bins, meta=info)


def nfdh_into_region(items: Sequence, W, H, x0=ZERO, y0=ZERO, transpose: bool = False):
    """Pack the longest NFDH-order prefix of ``items`` that fits a ``W x H`` region.

    Returns ``(placements, leftover)``; placements are translated to the
    region's corner ``(x0, y0)`` and ``leftover`` keeps NFDH order.
    """
    W, H, x0, y0 = rat(W), rat(H), rat(x0), rat(y0)
    if transpose:
        W, H = H, W
    view = nfdh_order(_view(items, transpose))
    placed = []
    y, used, shelf_h = ZERO, ZERO, None
    stop = len(view)
    for k, it in enumerate(view):
        if it.w > W or it.h > H:
            stop = k
            break
        if shelf_h is not None and used + it.w <= W:
            x = used
        else:
            base = y if shelf_h is None else y + shelf_h
            if base + it.h > H:
                stop = k
                break
            y, shelf_h, x = base, it.h, ZERO
        placed.append(Placement(it.id, x, y, it.w, it.h))
        used = x + it.w
    out = []
    for p in placed:
        p = _flip(p, transpose)
        out.append(Placement(p.item_id, p.x + x0, p.y + y0, p.w, p.h))
    by_id = {i.id: i for i in items}
    leftover = [by_id[it.id] for it in view[stop:]]
    return out, leftover
