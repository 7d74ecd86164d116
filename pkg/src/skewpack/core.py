"""Exact geometric primitives, the instance/layout data model and validators.

All quantities are :class:`fractions.Fraction` values. Decimal strings such as
``"0.6"`` are parsed exactly, so ``rat("0.6") == Fraction(3, 5)``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rat = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)

HORIZONTAL = "horizontal"
VERTICAL = "vertical"
AXES = (HORIZONTAL, VERTICAL)
KINDS = ("wide", "tall", "small")


class SkewpackError(Exception):
    """Base class for errors raised by this package."""


class StructuralError(SkewpackError):
    """Malformed input: unknown ids, non-positive dimensions and the like."""


class InvariantViolation(SkewpackError):
    """An internal guarantee did not hold. Always a bug if raised."""


class FreenessViolation(SkewpackError):
    """Items have a dimension inside a forbidden band ``(eps2, eps1]``."""

    def __init__(self, offenders, eps1, eps2):
        self.offenders = list(offenders)
        self.eps1 = eps1
        self.eps2 = eps2
        super().__init__(
            f"{len(self.offenders)} item(s) have a dimension in "
            f"({rat_brief(eps2)}, {rat_brief(eps1)}]: "
            f"{self.offenders[:10]}"
        )


class SkewnessError(SkewpackError):
    """Items are too large in both dimensions for the requested algorithm."""

    def __init__(self, offenders, bound_w, bound_h=None):
        self.offenders = list(offenders)
        self.bound_w = bound_w
        self.bound_h = bound_w if bound_h is None else bound_h
        super().__init__(
            f"{len(self.offenders)} item(s) are not skewed (need w <= "
            f"{rat_brief(self.bound_w)} or h <= {rat_brief(self.bound_h)}): "
            f"{self.offenders[:10]}"
        )


def rat(value) -> Fraction:
    """Convert ``value`` to an exact rational.

    Accepts ints, Fractions and strings holding ``"p/q"`` or a decimal.
    Floats are refused because they are rarely the number the caller meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not dimensions")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise StructuralError(f"cannot parse rational {value!r}") from exc
    if isinstance(value, float):
        raise TypeError(f"float {value!r} given; pass a string or Fraction instead")
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def rat_str(value: Fraction) -> str:
    """Canonical string form used in JSON: ``"3/5"``, ``"0"``, ``"2"``."""
    return str(Fraction(value))


def rat_brief(value) -> str:
    """Readable form for messages; huge rationals are shown by magnitude only."""
    value = Fraction(value)
    if value.numerator.bit_length() + value.denominator.bit_length() <= 200:
        return str(value)
    if value == 0:
        return "0"
    lg = math.log10(abs(value.numerator)) - math.log10(value.denominator)
    return ("-" if value < 0 else "") + f"~1e{lg:.1f}"


def ceil(value: Fraction) -> int:
    return -((-value.numerator) // value.denominator)


def floor(value: Fraction) -> int:
    return value.numerator // value.denominator


# --------------------------------------------------------------------------
# data model


@dataclass(frozen=True)
class Item:
    """An axis-parallel rectangle with exact width and height in (0, 1]."""

    id: int
    w: Fraction
    h: Fraction
    kind: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "w", rat(self.w))
        object.__setattr__(self, "h", rat(self.h))
        if self.w <= 0 or self.h <= 0:
            raise StructuralError(f"item {self.id} has non-positive dimension")
        if self.w > 1 or self.h > 1:
            raise StructuralError(f"item {self.id} does not fit in a unit bin")
        if self.kind is not None and self.kind not in KINDS:
            raise StructuralError(f"item {self.id} has unknown kind {self.kind!r}")

    @property
    def area(self) -> Fraction:
        return self.w * self.h

    def transposed(self) -> "Item":
        kind = {"wide": "tall", "tall": "wide"}.get(self.kind, self.kind)
        return Item(self.id, self.h, self.w, kind)

    def with_kind(self, kind: str | None) -> "Item":
        return Item(self.id, self.w, self.h, kind)


@dataclass(frozen=True)
class Rect:
    """A plain rectangle, used for regions, containers and empty space."""

    x: Fraction
    y: Fraction
    w: Fraction
    h: Fraction

    @property
    def x2(self) -> Fraction:
        return self.x + self.w

    @property
    def y2(self) -> Fraction:
        return self.y + self.h

    @property
    def area(self) -> Fraction:
        return self.w * self.h

    def transposed(self) -> "Rect":
        return Rect(self.y, self.x, self.h, self.w)


@dataclass(frozen=True)
class Slice:
    parent_id: int
    cut_axis: str

    def __post_init__(self):
        if self.cut_axis not in AXES:
            raise StructuralError(f"unknown cut axis {self.cut_axis!r}")


@dataclass(frozen=True)
class Placement:
    """An item (or a slice of it) placed with its bottom-left corner at (x, y)."""

    item_id: int
    x: Fraction
    y: Fraction
    w: Fraction
    h: Fraction
    slice: Slice | None = None

    @property
    def x2(self) -> Fraction:
        return self.x + self.w

    @property
    def y2(self) -> Fraction:
        return self.y + self.h

    @property
    def area(self) -> Fraction:
        return self.w * self.h

    @property
    def rect(self) -> Rect:
        return Rect(self.x, self.y, self.w, self.h)

    def moved(self, dx=ZERO, dy=ZERO) -> "Placement":
        return Placement(self.item_id, self.x + dx, self.y + dy, self.w, self.h, self.slice)

    def transposed(self) -> "Placement":
        sl = self.slice
        if sl is not None:
            sl = Slice(sl.parent_id, VERTICAL if sl.cut_axis == HORIZONTAL else HORIZONTAL)
        return Placement(self.item_id, self.y, self.x, self.h, self.w, sl)


@dataclass(frozen=True)
class BinLayout:
    bin_index: int
    placements: tuple[Placement, ...]
    annotations: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "placements", tuple(self.placements))

    @property
    def area(self) -> Fraction:
        return sum((p.area for p in self.placements), ZERO)


@dataclass(frozen=True)
class Layout:
    bins: tuple[BinLayout, ...]
    discarded: tuple[int, ...] = ()
    meta: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "bins", tuple(self.bins))
        object.__setattr__(self, "discarded", tuple(self.discarded))

    @property
    def num_bins(self) -> int:
        return len(self.bins)

    def item_ids(self) -> set[int]:
        return {p.item_id for b in self.bins for p in b.placements}


def make_layout(bins_placements: Iterable[Sequence[Placement]], discarded=(), meta=None,
                annotations: Sequence[Mapping] | None = None) -> Layout:
    """Build a :class:`Layout` from plain lists of placements, one list per bin."""
    bins = []
    for k, placements in enumerate(bins_placements):
        ann = annotations[k] if annotations is not None else {}
        bins.append(BinLayout(k, tuple(placements), ann))
    return Layout(tuple(bins), tuple(discarded), dict(meta or {}))


def renumber(bins: Iterable[BinLayout]) -> tuple[BinLayout, ...]:
    return tuple(BinLayout(k, b.placements, b.annotations) for k, b in enumerate(bins))


@dataclass(frozen=True)
class Instance:
    """A list of items with dense ids ``0..n-1`` and free-form metadata."""

    items: tuple[Item, ...]
    meta: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        for k, it in enumerate(self.items):
            if it.id != k:
                raise StructuralError(f"item ids must be dense 0..n-1; got {it.id} at {k}")

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    @property
    def area(self) -> Fraction:
        return total_area(self.items)


def total_area(items) -> Fraction:
    return sum((i.w * i.h for i in items), ZERO)


def hsum(items) -> Fraction:
    return sum((i.h for i in items), ZERO)


def wsum(items) -> Fraction:
    return sum((i.w for i in items), ZERO)


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Rules:
    """What a layout is allowed to do.

    ``allow_slicing`` maps an item kind to the cut axes its items may be
    sliced along. Items without a kind can never be sliced, unless
    ``shape_kinds`` is set: then an untagged item counts as wide when its
    width exceeds 1/2 and as tall when its height does.
    """

    allow_slicing: Mapping[str, frozenset] = field(default_factory=dict)
    require_all_packed: bool = True
    require_complete_slices: bool = True
    shape_kinds: bool = False

    def kind_of(self, it):
        kind = getattr(it, "kind", None)
        if kind is None and self.shape_kinds:
            half = Fraction(1, 2)
            kind = "wide" if it.w > half else "tall" if it.h > half else None
        return kind

    @staticmethod
    def whole() -> "Rules":
        return Rules()

    @staticmethod
    def sliceable() -> "Rules":
        """Wide items cut horizontally, tall items vertically, small both ways."""
        return Rules({
            "wide": frozenset({HORIZONTAL}),
            "tall": frozenset({VERTICAL}),
            "small": frozenset(AXES),
        })


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    items: tuple = ()
    bin_index: int | None = None

    def to_json(self):
        return {"kind": self.kind, "message": self.message, "items": list(self.items),
                "bin": self.bin_index}


@dataclass
class Report:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, kind, message, items=(), bin_index=None):
        self.violations.append(Violation(kind, message, tuple(items), bin_index))

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def interiors_overlap(a, b) -> bool:
    """True iff the open interiors of two rectangles intersect."""
    return a.x < b.x + b.w and b.x < a.x + a.w and a.y < b.y + b.h and b.y < a.y + a.h


def find_overlaps(rects: Sequence) -> list[tuple[int, int]]:
    """Index pairs of rectangles whose interiors intersect (sweep on x)."""
    order = sorted(range(len(rects)), key=lambda k: rects[k].x)
    out = []
    for a_pos, a in enumerate(order):
        ra = rects[a]
        right = ra.x + ra.w
        for b in order[a_pos + 1:]:
            rb = rects[b]
            if rb.x >= right:
                break
            if interiors_overlap(ra, rb):
                out.append((min(a, b), max(a, b)))
    return out


def _items_by_id(items) -> dict:
    if isinstance(items, Instance):
        items = items.items
    table = {}
    for it in items:
        if it.w <= 0 or it.h <= 0:
            raise StructuralError(f"item {it.id} has non-positive dimension")
        if it.id in table:
            raise StructuralError(f"duplicate item id {it.id}")
        table[it.id] = it
    return table


def validate_layout(instance, layout: Layout, rules: Rules | None = None,
                    bin_w: Fraction = ONE, bin_h: Fraction = ONE) -> Report:
    """Check a layout against an instance. An empty report means valid.

    ``instance`` may be an :class:`Instance` or any sequence of objects with
    ``id``, ``w``, ``h`` and optionally ``kind`` attributes (pseudo-items with
    dimensions above one are fine here, as long as each piece fits a bin).
    """
    rules = rules or Rules()
    items = _items_by_id(instance)
    report = Report()
    pieces = defaultdict(list)

    for b in layout.bins:
        for p in b.placements:
            if p.item_id not in items:
                raise StructuralError(f"placement references unknown item {p.item_id}")
            if p.w <= 0 or p.h <= 0:
                raise StructuralError(f"placement of item {p.item_id} has non-positive size")
            if p.x < 0 or p.y < 0 or p.x + p.w > bin_w or p.y + p.h > bin_h:
                report.add("out-of-bin", f"item {p.item_id} leaves bin {b.bin_index}",
                           (p.item_id,), b.bin_index)
            pieces[p.item_id].append(p)
        for a, c in find_overlaps(b.placements):
            pa, pc = b.placements[a], b.placements[c]
            report.add("overlap", f"items {pa.item_id} and {pc.item_id} overlap in bin "
                       f"{b.bin_index}", (pa.item_id, pc.item_id), b.bin_index)

    for iid in layout.discarded:
        if iid not in items:
            raise StructuralError(f"discard list references unknown item {iid}")
    discarded = set(layout.discarded)
    if len(discarded) != len(layout.discarded):
        report.add("duplicate-discard", "an item is discarded more than once")

    for iid, plist in pieces.items():
        it = items[iid]
        if iid in discarded:
            report.add("placed-and-discarded", f"item {iid} is both placed and discarded",
                       (iid,))
        _check_pieces(it, plist, rules, report)

    if rules.require_all_packed:
        missing = sorted(set(items) - set(pieces) - discarded)
        if missing:
            report.add("missing", f"{len(missing)} item(s) neither placed nor discarded",
                       missing)
    return report


def _check_pieces(it, plist, rules: Rules, report: Report):
    whole = [p for p in plist if p.slice is None]
    sliced = [p for p in plist if p.slice is not None]
    iid = it.id
    for p in whole:
        if p.w != it.w or p.h != it.h:
            report.add("size", f"item {iid} placed with wrong size", (iid,))
    if whole and (len(whole) > 1 or sliced):
        report.add("duplicate", f"item {iid} placed more than once", (iid,))
        return
    if not sliced:
        return

    kind = rules.kind_of(it)
    allowed = rules.allow_slicing.get(kind, frozenset())
    axes = {p.slice.cut_axis for p in sliced}
    for p in sliced:
        if p.slice.parent_id != iid:
            report.add("slice", f"slice parent {p.slice.parent_id} differs from item {iid}",
                       (iid,))
    bad = axes - allowed
    if bad:
        report.add("slice-orientation",
                   f"item {iid} ({kind}) sliced along {sorted(bad)}",
                   (iid,))
        return

    exact = rules.require_complete_slices
    # a piece cut both ways carries only its latest axis, so items that may
    # be cut both ways fall back to the area test when one axis does not fit
    both = allowed >= set(AXES)
    if axes == {HORIZONTAL} and not (both and any(p.w != it.w for p in sliced)):
        total = sum((p.h for p in sliced), ZERO)
        ok = all(p.w == it.w for p in sliced) and (total == it.h if exact else total <= it.h)
    elif axes == {VERTICAL} and not (both and any(p.h != it.h for p in sliced)):
        total = sum((p.w for p in sliced), ZERO)
        ok = all(p.h == it.h for p in sliced) and (total == it.w if exact else total <= it.w)
    else:
        total = sum((p.area for p in sliced), ZERO)
        ok = all(p.w <= it.w and p.h <= it.h for p in sliced) and (
            total == it.area if exact else total <= it.area)
    if not ok:
        report.add("reassembly", f"slices of item {iid} do not reassemble it", (iid,))


def substitute_items(layout: Layout, originals: Mapping[int, Item]) -> Layout:
    """Replace whole placements of rounded items by the original (smaller) items.

    Each original keeps the bottom-left corner of its rounded placement, so it
    stays within the region the rounded item occupied.
    """
    bins = []
    for b in layout.bins:
        out = []
        for p in b.placements:
            it = originals[p.item_id]
            if p.slice is not None:
                raise StructuralError("cannot substitute into a sliced placement")
            if it.w > p.w or it.h > p.h:
                raise InvariantViolation(f"item {it.id} larger than its rounded copy")
            out.append(Placement(p.item_id, p.x, p.y, it.w, it.h))
        bins.append(BinLayout(b.bin_index, tuple(out), b.annotations))
    return Layout(tuple(bins), layout.discarded, layout.meta)


# --------------------------------------------------------------------------
# empty space


def decompose_empty_space(bin_w, bin_h, placements: Sequence) -> list[Rect]:
    """Split the free space of a bin into rectangles using horizontal cuts only.

    The top and bottom edge of every placed rectangle are extended left and
    right until they run into another rectangle or the bin border. The free
    space between those segments falls apart into at most ``3n + 1``
    rectangles, returned bottom to top, then left to right.
    """
    bin_w, bin_h = rat(bin_w), rat(bin_h)
    rects = [Rect(p.x, p.y, p.w, p.h) for p in placements]
    for r in rects:
        if r.x < 0 or r.y < 0 or r.x2 > bin_w or r.y2 > bin_h:
            raise StructuralError("rectangle outside the bin")
    if find_overlaps(rects):
        raise StructuralError("overlapping rectangles")

    ys = sorted({ZERO, bin_h} | {r.y for r in rects} | {r.y2 for r in rects})
    cuts = {y: _edge_segments(y, rects, bin_w) for y in ys[1:-1]}

    done: list[Rect] = []
    open_regions: dict[tuple, Fraction] = {}  # (x1, x2) -> y where it started
    for lo, hi in zip(ys, ys[1:]):
        blockers = sorted((r.x, r.x2) for r in rects if r.y < hi and r.y2 > lo)
        free = _free_intervals(blockers, bin_w)
        cut = cuts.get(lo, [])
        still_open = {}
        for iv in free:
            start = open_regions.pop(iv, None)
            if start is not None and not _crosses(cut, iv):
                still_open[iv] = start
            else:
                if start is not None:
                    done.append(Rect(iv[0], start, iv[1] - iv[0], lo - start))
                still_open[iv] = lo
        for iv, start in open_regions.items():
            done.append(Rect(iv[0], start, iv[1] - iv[0], lo - start))
        open_regions = still_open
    for iv, start in open_regions.items():
        done.append(Rect(iv[0], start, iv[1] - iv[0], bin_h - start))
    done.sort(key=lambda r: (r.y, r.x))
    return done


def _free_intervals(blockers, width):
    out = []
    cursor = ZERO
    for a, b in blockers:
        if a > cursor:
            out.append((cursor, a))
        cursor = max(cursor, b)
    if cursor < width:
        out.append((cursor, width))
    return out


def _edge_segments(y, rects, width):
    """Segments produced by extending every rectangle edge lying on line ``y``."""
    crossing = [r for r in rects if r.y < y < r.y2]
    segs = []
    for r in rects:
        if r.y != y and r.y2 != y:
            continue
        left = max((c.x2 for c in crossing if c.x2 <= r.x), default=ZERO)
        right = min((c.x for c in crossing if c.x >= r.x2), default=width)
        segs.append((left, right))
    return segs


def _crosses(segs, iv):
    return any(a < iv[1] and iv[0] < b for a, b in segs)


# --------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassifiedItems:
    wide: tuple[Item, ...]
    tall: tuple[Item, ...]
    small: tuple[Item, ...]

    def all(self) -> tuple[Item, ...]:
        return self.wide + self.tall + self.small


def classify_items(items, eps1, eps2) -> ClassifiedItems:
    """Partition items into wide, tall and small for thresholds ``eps2 < eps1``.

    Raises :class:`FreenessViolation` if some item has a side in
    ``(eps2, eps1]`` and :class:`SkewnessError` if both sides exceed ``eps1``.
    """
    eps1, eps2 = rat(eps1), rat(eps2)
    if not eps2 < eps1:
        raise ValueError("need eps2 < eps1")
    wide, tall, small, band, big = [], [], [], [], []
    for it in items:
        if eps2 < it.w <= eps1 or eps2 < it.h <= eps1:
            band.append(it.id)
        elif it.w > eps1 and it.h <= eps2:
            wide.append(it.with_kind("wide"))
        elif it.h > eps1 and it.w <= eps2:
            tall.append(it.with_kind("tall"))
        elif it.w <= eps2 and it.h <= eps2:
            small.append(it.with_kind("small"))
        else:
            big.append(it.id)
    if band:
        raise FreenessViolation(band, eps1, eps2)
    if big:
        raise SkewnessError(big, eps2)
    return ClassifiedItems(tuple(wide), tuple(tall), tuple(small))
