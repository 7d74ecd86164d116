"""Compartments and the conversion of a discretized bin into compartments.

A compartment is a rectangle of the bin whose x-edges are grid values (or
the right border), whose y-edges are multiples of ``eps_cont`` and which
holds wide items or tall items but not both. Tall compartments are one grid
column wide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core import (HORIZONTAL, ONE, VERTICAL, ZERO, InvariantViolation, Placement, Rect,
                    Slice, StructuralError, decompose_empty_space, find_overlaps, floor)
from ..core import ceil as _ceil
from .discretize import kinds_of
from .grid import GridT

WIDE, TALL = "wide", "tall"


@dataclass(frozen=True)
class Compartment:
    rect: Rect
    kind: str

    def __post_init__(self):
        if self.kind not in (WIDE, TALL):
            raise StructuralError(f"unknown compartment kind {self.kind!r}")

    @property
    def width(self):
        return self.rect.w

    @property
    def height(self):
        return self.rect.h


@dataclass(frozen=True)
class CompartmentPacking:
    """Empty compartments, one tuple per bin."""

    bins: tuple[tuple[Compartment, ...], ...]

    @property
    def num_bins(self) -> int:
        return len(self.bins)

    def all(self):
        for b, comps in enumerate(self.bins):
            for c in comps:
                yield b, c


def _multiple(y, step):
    return (y / step).denominator == 1


def check_bin_compartments(comps, grid: GridT) -> list[str]:
    """Problems with one bin of compartments under the definition; empty if fine."""
    problems = []
    step = grid.eps_cont
    cols = grid.columns
    for c in comps:
        r = c.rect
        if r.w <= 0 or r.h <= 0 or r.x < 0 or r.y < 0 or r.x2 > 1 or r.y2 > 1:
            problems.append(f"compartment {r} is empty or leaves the bin")
        if not (grid.edge_ok(r.x) and grid.edge_ok(r.x2)):
            problems.append(f"compartment {r} has an x-edge off the grid")
        if not (_multiple(r.y, step) and _multiple(r.y2, step)):
            problems.append(f"compartment {r} has a y-edge off the eps_cont lattice")
        if c.kind == TALL:
            k = cols.index(r.x) if r.x in cols else -1
            if k < 0 or k + 1 >= len(cols) or cols[k + 1] != r.x2:
                problems.append(f"tall compartment {r} is not one column wide")
    if find_overlaps([c.rect for c in comps]):
        problems.append("compartments overlap")
    n_wide = sum(1 for c in comps if c.kind == WIDE)
    n_tall = len(comps) - n_wide
    if n_wide > grid.n_W:
        problems.append(f"{n_wide} wide compartments exceed {grid.n_W}")
    if n_tall > grid.n_H:
        problems.append(f"{n_tall} tall compartments exceed {grid.n_H}")
    return problems


# ---------------------------------------------------------------- geometry helpers


def _inside(p, r: Rect) -> bool:
    return r.x <= p.x and p.x2 <= r.x2 and r.y <= p.y and p.y2 <= r.y2


def _meets(p, r: Rect) -> bool:
    return p.x < r.x2 and r.x < p.x2 and p.y < r.y2 and r.y < p.y2


def _piece(p, x, y, w, h, axis):
    if (x, y, w, h) == (p.x, p.y, p.w, p.h):
        return p
    return Placement(p.item_id, x, y, w, h, Slice(p.item_id, axis))


def _subtract(p: Placement, r: Rect):
    """Parts of ``p`` outside ``r`` (vertical cuts first, then horizontal)."""
    if not _meets(p, r):
        return [p], ZERO
    out = []
    lo, hi = max(p.x, r.x), min(p.x2, r.x2)
    if p.x < lo:
        out.append(_piece(p, p.x, p.y, lo - p.x, p.h, VERTICAL))
    if hi < p.x2:
        out.append(_piece(p, hi, p.y, p.x2 - hi, p.h, VERTICAL))
    axis = HORIZONTAL if (lo, hi) == (p.x, p.x2) else VERTICAL
    if p.y < r.y:
        out.append(_piece(p, lo, p.y, hi - lo, r.y - p.y, axis))
    if r.y2 < p.y2:
        out.append(_piece(p, lo, r.y2, hi - lo, p.y2 - r.y2, axis))
    removed = p.area - sum((q.area for q in out), ZERO)
    return out, removed


def _split_at_columns(p: Placement, cols):
    cuts = [c for c in cols if p.x < c < p.x2]
    if not cuts:
        return [p]
    edges = [p.x] + cuts + [p.x2]
    return [_piece(p, a, p.y, b - a, p.h, VERTICAL) for a, b in zip(edges, edges[1:])]


def _split_rows(p: Placement, boxes):
    """Cut a wide piece horizontally at the box edges crossing it."""
    cuts = sorted({y for b in boxes if b.x < p.x2 and p.x < b.x2
                   for y in (b.y, b.y2) if p.y < y < p.y2})
    if not cuts:
        return [p]
    edges = [p.y] + cuts + [p.y2]
    return [_piece(p, p.x, a, p.w, b - a, HORIZONTAL) for a, b in zip(edges, edges[1:])]


def _gaps(blocks, lo=ZERO, hi=ONE):
    """Free y-intervals of ``[lo, hi]`` outside the sorted ``(y1, y2)`` blocks."""
    out, cursor = [], lo
    for a, b in sorted(blocks):
        if a > cursor:
            out.append((cursor, a))
        cursor = max(cursor, b)
    if cursor < hi:
        out.append((cursor, hi))
    return out


# ---------------------------------------------------------------- the conversion


@dataclass(frozen=True)
class CompartmentResult:
    compartments: tuple[Compartment, ...]
    placements: tuple[Placement, ...]
    discarded_area: Fraction
    tall_cells: tuple[Rect, ...]
    boxes: tuple[Rect, ...]


def compartmentalize_bin(placements, items, grid: GridT, check: bool = True):
    """Turn a bin whose wide edges are grid values into compartments.

    Tall items are cut at column lines; wide items separate each column into
    cells, and a cell holding a tall item is a tall cell. The space outside
    tall cells is cut horizontally into rectangles; those meeting a wide item
    are boxes. Each box is shrunk to the ``eps_cont`` lattice, dropping the
    wide and small slices in the removed slabs, and becomes a wide
    compartment if it still holds a wide item. Finally the wide compartments
    split each column, and every piece holding a tall item becomes a tall
    compartment.
    """
    kinds = kinds_of(items)
    cols = grid.columns
    pieces = []
    for p in placements:
        kind = kinds[p.item_id]
        if kind == WIDE and not (grid.edge_ok(p.x) and grid.edge_ok(p.x2)):
            raise StructuralError(f"wide piece of item {p.item_id} is off the grid")
        pieces.extend(_split_at_columns(p, cols) if kind == TALL else [p])
    wide = [p for p in pieces if kinds[p.item_id] == WIDE]
    tall = [p for p in pieces if kinds[p.item_id] == TALL]
    small = [p for p in pieces if kinds[p.item_id] == "small"]

    columns = list(zip(cols, cols[1:]))
    tall_cells = []
    for a, b in columns:
        blocks = [(p.y, p.y2) for p in wide if p.x <= a and b <= p.x2]
        members = [p for p in tall if a <= p.x and p.x2 <= b]
        for lo, hi in _gaps(blocks):
            if any(lo <= p.y and p.y2 <= hi for p in members):
                tall_cells.append(Rect(a, lo, b - a, hi - lo))
    for p in tall:
        if not any(_inside(p, c) for c in tall_cells):
            raise InvariantViolation(f"tall piece of item {p.item_id} is not in a tall cell")

    regions = decompose_empty_space(ONE, ONE, tall_cells)
    boxes = [r for r in regions if any(_meets(p, r) for p in wide)]
    wide = [q for p in wide for q in _split_rows(p, boxes)]

    step = grid.eps_cont
    lost = ZERO
    wide_comps = []
    for box in boxes:
        y1 = _ceil(box.y / step) * step
        y2 = floor(box.y2 / step) * step
        slabs = [Rect(box.x, box.y, box.w, y1 - box.y), Rect(box.x, y2, box.w, box.y2 - y2)]
        if y1 >= y2:
            slabs = [box]
        for s in slabs:
            if s.h <= 0 or s.w <= 0:
                continue
            nxt_w, nxt_s = [], []
            for group, out in ((wide, nxt_w), (small, nxt_s)):
                for p in group:
                    parts, removed = _subtract(p, s)
                    out.extend(parts)
                    lost += removed
            wide, small = nxt_w, nxt_s
        if y1 < y2:
            kept = Rect(box.x, y1, box.w, y2 - y1)
            if any(_inside(p, kept) for p in wide):
                wide_comps.append(Compartment(kept, WIDE))
    for p in wide:
        if not any(_inside(p, c.rect) for c in wide_comps):
            raise InvariantViolation(f"wide piece of item {p.item_id} is outside every box")

    tall_comps = []
    for a, b in columns:
        blocks = [(c.rect.y, c.rect.y2) for c in wide_comps
                  if c.rect.x <= a and b <= c.rect.x2]
        for lo, hi in _gaps(blocks):
            r = Rect(a, lo, b - a, hi - lo)
            if any(_inside(p, r) for p in tall):
                tall_comps.append(Compartment(r, TALL))
    for p in tall:
        if not any(_inside(p, c.rect) for c in tall_comps):
            raise InvariantViolation(f"tall piece of item {p.item_id} is outside every "
                                     "tall compartment")

    comps = tuple(sorted(wide_comps + tall_comps,
                         key=lambda c: (c.rect.y, c.rect.x, c.kind)))
    if check:
        problems = check_bin_compartments(comps, grid)
        if problems:
            raise InvariantViolation(problems[0])
        if not lost < grid.eps:
            raise InvariantViolation("compartmentalization discarded too much area")
    out = sorted(wide + tall + small, key=lambda p: (p.y, p.x, p.item_id))
    return CompartmentResult(comps, tuple(out), lost, tuple(tall_cells), tuple(boxes))
