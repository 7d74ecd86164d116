"""Linear grouping of wide/tall items and removal of a low-area band of items.

Linear grouping stacks the items by decreasing width (the grouped dimension),
cuts the stack into sections of equal height and rounds every width up to
the largest width reaching into a section. It leaves few distinct widths
while a packing of the rounded items still packs the originals.

Medium-item removal picks, from a rapidly shrinking schedule of thresholds,
a band whose items have small total area; dropping that band leaves an
instance with a gap between "large" and "small" dimensions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (ZERO, Item, SkewpackError, StructuralError, ceil, rat, rat_brief,
                   total_area)

WIDTH, HEIGHT = "width", "height"


def _dims(it, axis):
    """(grouped dimension, stacking dimension) of an item."""
    return (it.w, it.h) if axis == WIDTH else (it.h, it.w)


def _with_dim(it, value, axis):
    if axis == WIDTH:
        return Item(it.id, value, it.h, it.kind)
    return Item(it.id, it.w, value, it.kind)


@dataclass(frozen=True)
class GroupedItems:
    rounded: tuple[Item, ...]
    group_of: dict
    thresholds: tuple[Fraction, ...]
    groups: tuple[tuple[int, ...], ...]
    axis: str = WIDTH
    stack_height: Fraction = ZERO

    def distinct_values(self) -> list[Fraction]:
        return sorted({_dims(it, self.axis)[0] for it in self.rounded}, reverse=True)

    def classes(self) -> list[tuple[Fraction, Fraction]]:
        """Non-empty classes as ``(rounded dimension, total stacking extent)``."""
        out = []
        by_id = {it.id: it for it in self.rounded}
        for j, ids in enumerate(self.groups):
            if ids:
                out.append((self.thresholds[j],
                            sum((_dims(by_id[i], self.axis)[1] for i in ids), ZERO)))
        return out


def lingroup(items: Sequence[Item], eps, eps1, axis: str = WIDTH) -> GroupedItems:
    """Round the grouped dimension of every item up to one of at most ``1/(eps*eps1)`` values."""
    eps, eps1 = rat(eps), rat(eps1)
    if axis not in (WIDTH, HEIGHT):
        raise ValueError(f"unknown axis {axis!r}")
    for it in items:
        if _dims(it, axis)[0] <= eps1:
            raise StructuralError(f"item {it.id} has {axis} <= {eps1}; cannot group it")
    if not items:
        return GroupedItems((), {}, (), (), axis, ZERO)

    stack = sorted(items, key=lambda it: (-_dims(it, axis)[0], it.id))
    bottoms, y = [], ZERO
    for it in stack:
        bottoms.append(y)
        y += _dims(it, axis)[1]
    h_l = y
    section = eps * eps1 * h_l
    nsec = ceil(1 / (eps * eps1))

    thresholds = []
    k = 0
    for j in range(nsec):
        lo, hi = j * section, (j + 1) * section
        # first item (in stack order) whose open interval meets (lo, hi)
        while k < len(stack) and bottoms[k] + _dims(stack[k], axis)[1] <= lo:
            k += 1
        if k < len(stack) and bottoms[k] < hi:
            thresholds.append(_dims(stack[k], axis)[0])
        else:
            thresholds.append(None)
    # sections past the top of the stack can only arise from rounding of nsec
    thresholds = [t for t in thresholds if t is not None]

    first_index = {}
    for j, t in enumerate(thresholds):
        first_index.setdefault(t, j)
    ascending = sorted(first_index)
    groups = [[] for _ in thresholds]
    group_of = {}
    rounded = []
    for it in items:
        d = _dims(it, axis)[0]
        # smallest threshold >= d
        lo, hi = 0, len(ascending)
        while lo < hi:
            mid = (lo + hi) // 2
            if ascending[mid] >= d:
                hi = mid
            else:
                lo = mid + 1
        value = ascending[lo]
        j = first_index[value]
        groups[j].append(it.id)
        group_of[it.id] = j
        rounded.append(_with_dim(it, value, axis))
    return GroupedItems(tuple(rounded), group_of, tuple(thresholds),
                        tuple(tuple(g) for g in groups), axis, h_l)


# --------------------------------------------------------------------------
# medium items

#: schedule entries are materialised exactly only while the power in the
#: threshold function stays below this many bits
MAX_EXACT_BITS = 1 << 22


class ScheduleResolutionError(SkewpackError):
    """An item dimension is too close to a threshold that was only bounded."""


@dataclass(frozen=True)
class Threshold:
    """One schedule value: exact when known, otherwise a certified upper bound."""

    upper: Fraction
    exact: bool

    @property
    def value(self) -> Fraction:
        if not self.exact:
            raise ScheduleResolutionError("threshold is only known up to an upper bound")
        return self.upper

    def below(self, d) -> bool:
        """True iff ``threshold < d``."""
        if self.exact or d > self.upper:
            return self.upper < d
        raise ScheduleResolutionError(f"cannot compare {rat_brief(d)} with a threshold {self.describe()}")

    def describe(self):
        if self.upper.numerator.bit_length() + self.upper.denominator.bit_length() <= 200 \
                and self.exact:
            return str(self.upper)
        lg = math.log10(self.upper.numerator) - math.log10(self.upper.denominator)
        return ("=" if self.exact else "<") + f"1e{lg:.1f}"


def threshold_step(x: Fraction, eps: Fraction) -> Threshold:
    """``eps*x / (104 * (1 + 1/(eps*x))**(2/x - 2))``, exactly when affordable."""
    exponent = 2 / x - 2
    base = 1 + 1 / (eps * x)
    if exponent.denominator == 1 and exponent <= MAX_EXACT_BITS:
        # base >= 2, so the power has at least ``exponent`` bits
        bits = float(exponent) * math.log2(float(base)) if exponent else 0.0
        if bits <= MAX_EXACT_BITS:
            return Threshold(eps * x / (104 * base ** int(exponent)), True)
    # the power is at least one, so dropping it gives an upper bound
    return Threshold(eps * x / 104, False)


@dataclass(frozen=True)
class MediumRemoval:
    I_med: frozenset
    eps1: Fraction
    eps2: Threshold
    r: int
    schedule: tuple[Threshold, ...]
    band_areas: tuple[Fraction, ...]
    conforming: bool = True
    rho: Fraction | None = None

    def meta(self) -> dict:
        out = {"r": self.r, "eps1": str(self.eps1), "eps2": self.eps2.describe(),
               "medium_items": sorted(self.I_med),
               "schedule": [t.describe() for t in self.schedule],
               "threshold_schedule": "paper" if self.conforming else f"geometric rho={self.rho}"}
        if not self.conforming:
            out["non_conforming"] = True
        return out


def medium_schedule(eps, T: int, rho=None) -> tuple[Threshold, ...]:
    eps = rat(eps)
    sched = [Threshold(eps, True)]
    for _ in range(T):
        prev = sched[-1]
        if rho is not None:
            sched.append(Threshold(prev.upper * rho, prev.exact))
        elif prev.exact:
            sched.append(threshold_step(prev.upper, eps))
        else:
            sched.append(Threshold(prev.upper * eps / 104, False))
    return tuple(sched)


def remove_medium(items: Sequence[Item], eps, f_override=None) -> MediumRemoval:
    """Choose the band ``(mu_r, mu_{r-1}]`` of least area and remove its items.

    ``f_override`` is a ratio ``rho`` giving the geometric schedule
    ``mu_t = mu_{t-1} * rho``; results built with it are flagged as not
    following the default threshold function.
    """
    eps = rat(eps)
    if not (0 < eps <= Fraction(1, 2)) or (1 / eps).denominator != 1:
        raise ValueError("eps must be 1/k for an integer k >= 2")
    rho = None if f_override is None else rat(f_override)
    if rho is not None and not 0 < rho < 1:
        raise ValueError("f_override ratio must lie in (0, 1)")
    T = ceil(2 / eps)
    sched = medium_schedule(eps, T, rho)

    bands = []
    for t in range(1, T + 1):
        lo, hi = sched[t], sched[t - 1]
        members = set()
        for it in items:
            for d in (it.w, it.h):
                if lo.below(d) and not hi.below(d):
                    members.add(it.id)
                    break
        bands.append(members)
    areas = tuple(total_area(it for it in items if it.id in b) for b in bands)
    best = min(areas)
    r = areas.index(best) + 1
    return MediumRemoval(frozenset(bands[r - 1]), sched[r - 1].value, sched[r],
                         r, sched, areas, rho is None, rho)
