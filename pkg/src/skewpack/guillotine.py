"""Guillotine cut trees and stage counting.

A region holding several items is split by *all* end-to-end cuts of one
orientation at once. Each resulting strip spans the whole region in the
other direction, so a strip can only be split further by cuts of the other
orientation: orientations alternate automatically. Only the first
orientation is a real choice, and both are tried.

A cut level that only cuts waste off a single item is a final trim and does
not count as a stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import ONE, ZERO, BinLayout, Rect, StructuralError, find_overlaps

VERTICAL_CUTS = "vertical"  # cut lines x = c, strips side by side
HORIZONTAL_CUTS = "horizontal"  # cut lines y = c, strips stacked


@dataclass(frozen=True)
class GuillotineNode:
    region: Rect
    kind: str  # "leaf" or "internal"
    item: int | None = None  # placement index within the bin, for leaves
    cut_axis: str | None = None
    children: tuple["GuillotineNode", ...] = ()

    def leaves(self):
        if self.kind == "leaf":
            yield self
        else:
            for c in self.children:
                yield from c.leaves()

    def cut_lines(self):
        """``(axis, coordinate, region)`` for every cut, trims included."""
        if self.kind == "leaf":
            return []
        out = []
        for c in self.children[1:]:
            coord = c.region.x if self.cut_axis == VERTICAL_CUTS else c.region.y
            out.append((self.cut_axis, coord, self.region))
        for c in self.children:
            out.extend(c.cut_lines())
        return out

    def has_items(self) -> bool:
        return any(leaf.item is not None for leaf in self.leaves())


@dataclass(frozen=True)
class NotGuillotinable:
    """No end-to-end cut separates the given items inside ``region``."""

    region: Rect
    items: tuple[int, ...]

    def __bool__(self):
        return False


def _other(axis):
    return HORIZONTAL_CUTS if axis == VERTICAL_CUTS else VERTICAL_CUTS


def _strips(region: Rect, rects, idx, axis):
    """Split ``region`` at every end-to-end cut of ``axis``.

    Returns ``[(lo, hi, members)]`` covering the region, or ``None`` if there
    is no cut at all.
    """
    if axis == VERTICAL_CUTS:
        lo_of, hi_of, start, stop = (lambda r: r.x), (lambda r: r.x2), region.x, region.x2
    else:
        lo_of, hi_of, start, stop = (lambda r: r.y), (lambda r: r.y2), region.y, region.y2
    order = sorted(idx, key=lambda k: (lo_of(rects[k]), hi_of(rects[k])))
    strips = []
    cursor = start
    group, group_lo, reach = [], start, None
    for k in order:
        r = rects[k]
        if group and lo_of(r) >= reach:
            strips.append((group_lo, reach, group))
            cursor = reach
            group = []
        if not group:
            if lo_of(r) > cursor:
                strips.append((cursor, lo_of(r), []))
            group_lo, reach = lo_of(r), hi_of(r)
            group = [k]
        else:
            group.append(k)
            reach = max(reach, hi_of(r))
    if group:
        strips.append((group_lo, reach, group))
        cursor = reach
    if cursor < stop:
        strips.append((cursor, stop, []))
    if len(strips) <= 1:
        return None
    return strips


def _sub(region, lo, hi, axis):
    if axis == VERTICAL_CUTS:
        return Rect(lo, region.y, hi - lo, region.h)
    return Rect(region.x, lo, region.w, hi - lo)


def _build(region, rects, idx, axis):
    """Cut tree with a forced first axis, or a NotGuillotinable."""
    if len(idx) <= 1:
        return GuillotineNode(region, "leaf", idx[0] if idx else None)
    strips = _strips(region, rects, idx, axis)
    if strips is None:
        return NotGuillotinable(region, tuple(sorted(idx)))
    children = []
    for lo, hi, members in strips:
        sub = _sub(region, lo, hi, axis)
        if len(members) >= 2:
            node = _build(sub, rects, members, _other(axis))
            if isinstance(node, NotGuillotinable):
                return node
        else:
            node = GuillotineNode(sub, "leaf", members[0] if members else None)
        children.append(node)
    return GuillotineNode(region, "internal", None, axis, tuple(children))


def extract_guillotine_tree(bin_layout, region: Rect | None = None, check: bool = True):
    """Build a guillotine tree for the placements of one bin.

    ``bin_layout`` is a :class:`BinLayout` or a sequence of rectangles. Among
    the two possible first cut orientations the one giving fewer stages is
    kept (vertical on ties). Returns :class:`NotGuillotinable` otherwise.
    """
    rects = bin_layout.placements if isinstance(bin_layout, BinLayout) else tuple(bin_layout)
    region = region or Rect(ZERO, ZERO, ONE, ONE)
    if check:
        for r in rects:
            if r.x < region.x or r.y < region.y or r.x + r.w > region.x2 or \
                    r.y + r.h > region.y2:
                raise StructuralError("placement outside the region")
        if find_overlaps(rects):
            raise StructuralError("overlapping placements")
    idx = list(range(len(rects)))
    best = failure = None
    for axis in (VERTICAL_CUTS, HORIZONTAL_CUTS):
        node = _build(region, rects, idx, axis)
        if isinstance(node, NotGuillotinable):
            failure = node
            continue
        st = count_stages(node)
        if best is None or st < best[1]:
            best = (node, st)
    return failure if best is None else best[0]


def count_stages(tree: GuillotineNode) -> int:
    """Number of orientation runs on the worst root-to-leaf path.

    A cut level counts unless it is a final trim, i.e. it only cuts waste
    off a single item. Consecutive counted levels of the same orientation
    merge into one stage.
    """
    def walk(node, last):
        if node.kind == "leaf":
            return 0
        busy = [c for c in node.children if c.has_items()]
        final_trim = len(busy) == 1 and busy[0].kind == "leaf"
        if final_trim:
            return 0
        step = 1 if node.cut_axis != last else 0
        return step + max((walk(c, node.cut_axis) for c in node.children), default=0)
    return walk(tree, None)


def stage_counts(layout) -> list:
    """Per-bin stage counts; ``None`` marks a bin that is not guillotinable."""
    out = []
    for b in layout.bins:
        t = extract_guillotine_tree(b)
        out.append(None if isinstance(t, NotGuillotinable) else count_stages(t))
    return out


def guillotine_area_cap(eps) -> Fraction:
    """Largest area a guillotine bin can hold in the lower-bound family."""
    eps = Fraction(eps)
    return Fraction(3, 4) + eps / 2 - eps * eps / 4


def tree_placements(tree: GuillotineNode, bin_layout: BinLayout) -> list:
    """Placements recovered from the leaves, in leaf order."""
    return [bin_layout.placements[leaf.item] for leaf in tree.leaves() if leaf.item is not None]
