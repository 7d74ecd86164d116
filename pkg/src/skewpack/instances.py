"""Instance generators: the lower-bound family and seeded random skewed items.

The exact oracle lives in :mod:`skewpack.oracle` and is re-exported here.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .core import VERTICAL, Instance, Item, Placement, Slice, make_layout, rat
from .oracle import ExceedsMax, OracleBudgetExceeded, oracle_opt

__all__ = ["PROFILES", "GRAIN", "gen_lower_bound", "gen_random_skewed", "is_skewed",
           "gen_fractional_bin", "ExceedsMax", "OracleBudgetExceeded", "oracle_opt"]

PROFILES = {
    # fractions of wide, tall and small items
    "wide-heavy": (Fraction(4, 5), Fraction(1, 5), Fraction(0)),
    "tall-heavy": (Fraction(1, 5), Fraction(4, 5), Fraction(0)),
    "balanced": (Fraction(1, 2), Fraction(1, 2), Fraction(0)),
    "small-mix": (Fraction(2, 5), Fraction(2, 5), Fraction(1, 5)),
}

#: random dimensions are multiples of 1/GRAIN of their range
GRAIN = 1000


def gen_lower_bound(m: int, k: int, eps):
    """Items that fit ``m`` bins but need about ``4m/3`` guillotine bins.

    There are ``2mk`` items of size ``(1+eps)/2 x (1-eps)/(2k)`` and ``2mk``
    transposed copies. The reference layout puts four stacks of ``k`` items
    per bin in a pinwheel around an empty centre square.
    """
    eps = rat(eps)
    if m < 1 or k < 1 or not 0 < eps < 1:
        raise ValueError("need m, k >= 1 and 0 < eps < 1")
    long_side = (1 + eps) / 2
    short = (1 - eps) / (2 * k)
    n_half = 2 * m * k
    items = [Item(i, long_side, short, "wide") for i in range(n_half)]
    items += [Item(n_half + i, short, long_side, "tall") for i in range(n_half)]

    lo = (1 - eps) / 2
    bins = []
    for b in range(m):
        wide = list(range(2 * k * b, 2 * k * (b + 1)))
        tall = [n_half + i for i in wide]
        ps = []
        for i in range(k):
            ps.append(Placement(wide[i], Fraction(0), i * short, long_side, short))
            ps.append(Placement(wide[k + i], lo, long_side + i * short, long_side, short))
            ps.append(Placement(tall[i], i * short, lo, short, long_side))
            ps.append(Placement(tall[k + i], long_side + i * short, Fraction(0), short,
                                long_side))
        bins.append(ps)
    meta = {"family": "lowerbound", "params": {"m": m, "k": k, "eps": str(eps)},
            "opt": m}
    ref = make_layout(bins, meta={"algorithm": "reference", "family": "lowerbound"})
    return Instance(tuple(items), meta), ref


def _uniform(rng, bound):
    """A random multiple of ``bound/GRAIN`` in ``(0, bound]``."""
    return Fraction(rng.randint(1, GRAIN), GRAIN) * bound


def gen_random_skewed(n: int, delta_w, delta_h, seed: int, profile: str = "balanced"):
    """``n`` random ``(delta_w, delta_h)``-skewed items, reproducible from ``seed``."""
    delta_w, delta_h = rat(delta_w), rat(delta_h)
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}")
    if not (0 < delta_w <= Fraction(1, 2) and 0 < delta_h <= Fraction(1, 2)):
        raise ValueError("deltas must lie in (0, 1/2]")
    fw, ft, fs = PROFILES[profile]
    n_wide = int(fw * n)
    n_small = int(fs * n)
    if fs and n_small == 0 and n >= 3:
        n_small = 1
    n_tall = n - n_wide - n_small
    kinds = ["wide"] * n_wide + ["tall"] * n_tall + ["small"] * n_small
    rng = random.Random(seed)
    rng.shuffle(kinds)
    items = []
    for i, kind in enumerate(kinds):
        if kind == "wide":
            w, h = _uniform(rng, Fraction(1)), _uniform(rng, delta_h)
        elif kind == "tall":
            w, h = _uniform(rng, delta_w), _uniform(rng, Fraction(1))
        else:
            w, h = _uniform(rng, delta_w), _uniform(rng, delta_h)
        items.append(Item(i, w, h))
    meta = {"family": "random", "params": {"n": n, "delta_w": str(delta_w),
                                           "delta_h": str(delta_h), "profile": profile},
            "seed": seed}
    return Instance(tuple(items), meta)


def is_skewed(item, delta_w, delta_h=None) -> bool:
    delta_h = delta_w if delta_h is None else delta_h
    return item.w <= delta_w or item.h <= delta_h


def gen_fractional_bin(seed: int, R, eps1=Fraction(1, 2), slice_prob=Fraction(1, 3)):
    """A random fractional packing of one bin for the discretization steps.

    Wide items (widths drawn from ``R``) are stacked at the bottom at random
    x offsets, small items fill part of the space beside them and tall items
    of height above ``eps1`` stand side by side on top. Some tall items are
    cut into vertical slices. Returns ``(items, placements)`` with kinds set.
    """
    rng = random.Random(seed)
    R = sorted(rat(r) for r in R)
    eps1 = rat(eps1)
    items, ps = [], []

    def new(w, h, kind):
        it = Item(len(items), w, h, kind)
        items.append(it)
        return it

    top = Fraction(rng.randint(1, 30), 64) * (1 - eps1)
    y = Fraction(0)
    while True:
        h = Fraction(rng.randint(1, 8), 256)
        if y + h > top:
            break
        w = rng.choice(R)
        x = Fraction(rng.randint(0, int((1 - w) * 64)), 64)
        it = new(w, h, "wide")
        ps.append(Placement(it.id, x, y, w, h))
        gap = 1 - (x + w)
        if gap >= Fraction(1, 64) and rng.random() < 0.5:
            s = new(Fraction(1, 64), h, "small")
            ps.append(Placement(s.id, x + w, y, s.w, s.h))
        y += h
    x = Fraction(0)
    while True:
        w = Fraction(rng.randint(1, 4), 128)
        if x + w > 1:
            break
        h = eps1 + Fraction(rng.randint(1, 16), 64) * (1 - eps1 - y)
        if y + h > 1:
            h = 1 - y
        if h > eps1:
            it = new(w, h, "tall")
            if rng.random() < slice_prob and w > Fraction(1, 128):
                cut = Fraction(1, 128)
                ps.append(Placement(it.id, x, y, cut, h, Slice(it.id, VERTICAL)))
                ps.append(Placement(it.id, x + cut, y, w - cut, h, Slice(it.id, VERTICAL)))
            else:
                ps.append(Placement(it.id, x, y, w, h))
        x += w
    return items, ps
