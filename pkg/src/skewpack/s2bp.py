"""greedyPack: sliceable packing of wide and tall pieces into unit bins.

Wide pieces have width above 1/2 and may be cut horizontally; tall pieces
have height above 1/2 and may be cut vertically. Dimensions along the
sliceable axis may exceed 1. Each bin is filled in one of two ways:

* type 1 (remaining total height of wide pieces >= remaining total width
  of tall pieces): wide pieces of total height 1 are stacked in a column
  on the right, then tall pieces fill the region to its left;
* type 2: the transpose, tall pieces along the top and wide pieces below.

The result is a 2-stage packing that needs at most ``m - 1`` cuts per axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import (HORIZONTAL, ONE, VERTICAL, ZERO, Layout, Placement, Rect, Slice,
                   StructuralError, ceil, make_layout, rat)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Piece:
    """A wide or tall pseudo-item. Only the side along which it is cut may exceed 1."""

    id: int
    w: Fraction
    h: Fraction
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "w", rat(self.w))
        object.__setattr__(self, "h", rat(self.h))
        if self.w <= 0 or self.h <= 0:
            raise StructuralError(f"piece {self.id} has non-positive dimension")

    @property
    def area(self):
        return self.w * self.h


@dataclass(frozen=True)
class Fragment:
    """The part of a piece that landed in one bin."""

    piece: object
    rect: Rect
    sliced: bool


@dataclass(frozen=True)
class BinRecord:
    type: int
    full: bool
    A_before: Fraction
    B_before: Fraction
    wide: tuple[Fragment, ...]
    tall: tuple[Fragment, ...]


@dataclass(frozen=True)
class S2bpResult:
    layout: Layout
    horizontal_cut_count: int
    vertical_cut_count: int
    bins: tuple[BinRecord, ...] = field(default=(), compare=False)

    @property
    def num_bins(self) -> int:
        return self.layout.num_bins


class _Queue:
    """Remaining pieces of one orientation, consumed from the front.

    ``length`` is the sliceable dimension (height for wide pieces), ``span``
    the other one.
    """

    def __init__(self, pieces, length, span):
        self.pieces = list(pieces)
        self.length = length
        self.span = span
        self.pos = 0
        self.used = ZERO  # how much of the front piece is gone already
        self.remaining = sum((length(p) for p in self.pieces), ZERO)

    def empty(self):
        return self.pos >= len(self.pieces)

    def front_span(self):
        return self.span(self.pieces[self.pos])

    def take_length(self, amount):
        """Take a prefix of total ``length`` min(amount, remaining); slice the boundary piece."""
        out = []
        while amount > 0 and not self.empty():
            p = self.pieces[self.pos]
            left = self.length(p) - self.used
            part = min(left, amount)
            sliced = part != self.length(p)
            out.append((p, part, sliced))
            amount -= part
            self.remaining -= part
            if part == left:
                self.pos += 1
                self.used = ZERO
            else:
                self.used += part
        return out


def greedy_pack(wide: Sequence, tall: Sequence) -> S2bpResult:
    """Pack wide pieces (w > 1/2) and tall pieces (h > 1/2) with slicing.

    In a type-1 bin the left region takes the tall prefix of total width
    ``1 - wmax(X)``, slicing its last piece vertically when needed.
    """
    for p in wide:
        if p.w <= HALF or p.w > 1:
            raise StructuralError(f"wide piece {p.id} needs 1/2 < w <= 1, got {p.w}")
    for p in tall:
        if p.h <= HALF or p.h > 1:
            raise StructuralError(f"tall piece {p.id} needs 1/2 < h <= 1, got {p.h}")
    ids = [p.id for p in wide] + [p.id for p in tall]
    if len(set(ids)) != len(ids):
        raise StructuralError("piece ids must be unique across wide and tall")

    W = _Queue(sorted(wide, key=lambda p: (-p.w, p.id)), lambda p: p.h, lambda p: p.w)
    H = _Queue(sorted(tall, key=lambda p: (-p.h, p.id)), lambda p: p.w, lambda p: p.h)

    records = []
    bins = []
    annotations = []
    while not (W.empty() and H.empty()):
        A, B = W.remaining, H.remaining
        if A >= B:
            rec, placements = _fill_bin(W, H, 1, A, B, transpose=False)
        else:
            rec, placements = _fill_bin(H, W, 2, A, B, transpose=True)
        records.append(rec)
        bins.append(placements)
        annotations.append({"type": rec.type, "full": rec.full})

    hcuts = _count_cuts(records, "wide")
    vcuts = _count_cuts(records, "tall")
    layout = make_layout(bins, meta={"algorithm": "s2bp"}, annotations=annotations)
    return S2bpResult(layout, hcuts, vcuts, tuple(records))


def _fill_bin(first: _Queue, second: _Queue, btype, A, B, transpose):
    """Fill one bin. ``first`` is stacked in the column, ``second`` beside it.

    Coordinates are produced for the type-1 picture and transposed for type 2:
    the column of ``first`` pieces is right-aligned and grows upwards; the
    ``second`` pieces stand side by side from x = 0, flush with the top.
    """
    col = first.take_length(ONE)
    colw = max((first.span(p) for p, _, _ in col), default=ZERO)
    col_h = sum((part for _, part, _ in col), ZERO)
    side = _take_side(second, ONE - colw)
    side_w = sum((part for _, part, _ in side), ZERO)

    frags_first, frags_second, placements = [], [], []
    y = ZERO
    for p, part, sliced in col:
        span = first.span(p)
        r = Rect(ONE - span, y, span, part)
        y += part
        frags_first.append((p, r, sliced))
    x = ZERO
    for p, part, sliced in side:
        span = second.span(p)
        r = Rect(x, ONE - span, part, span)
        x += part
        frags_second.append((p, r, sliced))

    def emit(p, r, sliced, axis):
        if transpose:
            r = r.transposed()
            axis = VERTICAL if axis == HORIZONTAL else HORIZONTAL
        sl = Slice(p.id, axis) if sliced else None
        placements.append(Placement(p.id, r.x, r.y, r.w, r.h, sl))
        return Fragment(p, r, sliced)

    fa = tuple(emit(p, r, s, HORIZONTAL) for p, r, s in frags_first)
    fb = tuple(emit(p, r, s, VERTICAL) for p, r, s in frags_second)
    full = col_h == 1 and side_w == 1 - colw
    if transpose:
        rec = BinRecord(btype, full, A, B, fb, fa)
    else:
        rec = BinRecord(btype, full, A, B, fa, fb)
    return rec, placements


def _take_side(q: _Queue, budget):
    """Prefix of ``q`` with total length at most ``budget``, slicing the last piece."""
    return q.take_length(budget) if budget > 0 else []


def _count_cuts(records, kind):
    """Number of cuts = number of fragments minus number of distinct pieces."""
    frags = {}
    for rec in records:
        for f in (rec.wide if kind == "wide" else rec.tall):
            frags[f.piece.id] = frags.get(f.piece.id, 0) + 1
    return sum(c - 1 for c in frags.values())


def hsum(pieces) -> Fraction:
    return sum((p.h for p in pieces), ZERO)


def wsum(pieces) -> Fraction:
    return sum((p.w for p in pieces), ZERO)


def area_bound(wide, tall) -> Fraction:
    """The bin-count bound max(ceil(hsum), ceil(wsum), 4a/3 + 8/3), as a rational."""
    a = sum((p.area for p in wide), ZERO) + sum((p.area for p in tall), ZERO)
    return max(Fraction(ceil(hsum(wide))), Fraction(ceil(wsum(tall))), Fraction(4, 3) * a
               + Fraction(8, 3))
