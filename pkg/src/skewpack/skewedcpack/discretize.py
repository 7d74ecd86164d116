"""Move wide-item edges onto the grid by strip removal and leftward compaction.

Input is a fractional packing of one bin: wide items may be sliced
horizontally, tall items vertically and small items both ways. Stage ``j``

1. discards the tall and small slices lying in the strips
   ``[x, x + delta_j] x [0, 1]`` for every ``x`` in ``T_{j-1}``;
2. pushes tall and small pieces left as far as they go, wide pieces acting
   as fixed obstacles;
3. moves every wide piece of level ``j`` left to the largest value of
   ``S_j`` not above its left edge.

After the last stage both edges of every wide piece are grid values.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction

from ..core import (VERTICAL, ZERO, InvariantViolation, Placement, Rules, Slice,
                    StructuralError, find_overlaps, make_layout, validate_layout)
from .grid import GridT


def fractional_rules() -> Rules:
    """Sliceable rules that accept partial slices (discards are allowed)."""
    return Rules(Rules.sliceable().allow_slicing, require_all_packed=False,
                 require_complete_slices=False)


def kinds_of(items) -> dict:
    out = {}
    for it in items:
        if it.kind is None:
            raise StructuralError(f"item {it.id} is not classified")
        out[it.id] = it.kind
    return out


def wide_levels(wide) -> list[int]:
    """Length of the longest chain ``u1 < u2 < ... < v`` ending at each piece.

    ``u < v`` iff ``x2(u) <= x1(v)``. Pieces are taken in order of their left
    edge, so every predecessor is known before it is needed.
    """
    order = sorted(range(len(wide)), key=lambda k: (wide[k].x, wide[k].x2))
    ends, best = [], []  # right edges sorted, with running maximum of levels
    level = [0] * len(wide)
    for k in order:
        p = wide[k]
        pos = bisect.bisect_right(ends, p.x)
        level[k] = 1 + (best[pos - 1] if pos else 0)
        at = bisect.bisect_right(ends, p.x2)
        ends.insert(at, p.x2)
        best.insert(at, max(level[k], best[at - 1] if at else 0))
        for q in range(at + 1, len(best)):
            best[q] = max(best[q], best[q - 1])
    return level


def _cut_out(p: Placement, holes):
    """Parts of ``p`` outside the x-intervals ``holes``; returns (parts, removed area)."""
    keep = [(p.x, p.x2)]
    for a, b in holes:
        nxt = []
        for lo, hi in keep:
            if b <= lo or a >= hi:
                nxt.append((lo, hi))
                continue
            if lo < a:
                nxt.append((lo, a))
            if b < hi:
                nxt.append((b, hi))
        keep = nxt
    if keep == [(p.x, p.x2)]:
        return [p], ZERO
    parts = [Placement(p.item_id, lo, p.y, hi - lo, p.h, Slice(p.item_id, VERTICAL))
             for lo, hi in keep]
    removed = p.area - sum((q.area for q in parts), ZERO)
    return parts, removed


def _compact(movable, fixed):
    """Push ``movable`` pieces left until nothing moves; ``fixed`` never moves."""
    pieces = sorted(movable, key=lambda p: (p.x, p.y, p.item_id))
    changed = True
    while changed:
        changed = False
        done = []
        for p in pieces:
            stop = ZERO
            for o in fixed + done:
                if o.y < p.y2 and p.y < o.y2 and o.x2 <= p.x and o.x2 > stop:
                    stop = o.x2
            if stop < p.x:
                p = p.moved(stop - p.x)
                changed = True
            done.append(p)
        pieces = sorted(done, key=lambda p: (p.x, p.y, p.item_id))
    return pieces


@dataclass(frozen=True)
class DiscretizeResult:
    placements: tuple[Placement, ...]
    discarded_area: Fraction
    levels: dict = field(default_factory=dict)
    stage_discards: tuple[Fraction, ...] = ()


def discretize_bin(placements, items, grid: GridT, check: bool = True) -> DiscretizeResult:
    """Discretize one fractional bin; see the module docstring.

    ``items`` supplies the kind of every item id. Each piece width of a wide
    item must be one of the grid's widths ``R``.
    """
    kinds = kinds_of(items)
    table = {it.id: it for it in items}
    placements = list(placements)
    for p in placements:
        if p.item_id not in kinds:
            raise StructuralError(f"placement references unknown item {p.item_id}")
    wide = [p for p in placements if kinds[p.item_id] == "wide"]
    rest = [p for p in placements if kinds[p.item_id] != "wide"]
    widths = set(grid.R)
    for p in wide:
        if p.w not in widths:
            raise StructuralError(f"wide piece of item {p.item_id} has width {p.w} "
                                  "outside the grid widths")
    levels = wide_levels(wide)
    rules = fractional_rules()

    def verify(stage):
        if not check:
            return
        layout = make_layout([wide + rest])
        rep = validate_layout(list(table.values()), layout, rules)
        if not rep.ok:
            raise InvariantViolation(f"stage {stage} broke the layout: "
                                     f"{rep.violations[0].message}")

    verify(0)
    total = ZERO
    per_stage = []
    for j in range(1, grid.stages + 1):
        delta = grid.deltas[j - 1]
        holes = [(x, min(x + delta, 1)) for x in grid.T[j - 1] if x < 1]
        stage_loss = ZERO
        cut = []
        for p in rest:
            parts, lost = _cut_out(p, holes)
            cut.extend(parts)
            stage_loss += lost
        rest = _compact(cut, wide)
        S = grid.S[j - 1]
        moved = []
        for p, lv in zip(wide, levels):
            if lv == j:
                target = S[bisect.bisect_right(S, p.x) - 1]
                p = p.moved(target - p.x)
            moved.append(p)
        wide = moved
        if find_overlaps(wide + rest):
            raise InvariantViolation(f"moving level-{j} wide items caused an overlap")
        verify(j)
        total += stage_loss
        per_stage.append(stage_loss)

    for p in wide:
        if not (grid.contains(p.x) and grid.contains(p.x2)):
            raise InvariantViolation(f"wide piece of item {p.item_id} is off the grid")
    if not total < grid.eps:
        raise InvariantViolation("discretization discarded too much area")
    lv = {}
    for p, level in zip(wide, levels):
        lv[p.item_id] = max(lv.get(p.item_id, 0), level)
    out = sorted(wide + rest, key=lambda p: (p.y, p.x, p.item_id))
    return DiscretizeResult(tuple(out), total, lv, tuple(per_stage))
