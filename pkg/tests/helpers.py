"""Shared checks used by the unit, property and acceptance tests."""

from fractions import Fraction

from skewpack.core import ceil, total_area
from skewpack.nfdh import nfdh_bins, nfdh_into_region, nfdh_strip


def check_strip(items):
    """Strip-height bounds; returns the packing."""
    sp = nfdh_strip(items)
    if items:
        hmax = max(i.h for i in items)
        a = total_area(items)
        assert sp.total_height < 2 * a + hmax
        eps = max(i.w for i in items)
        if eps < 1:
            assert sp.total_height < a / (1 - eps) + hmax
    return sp


def check_region(items, W, H, dw, dh):
    """If the area condition holds, everything fits the region."""
    placed, left = nfdh_into_region(items, W, H)
    if total_area(items) <= (W - dw) * (H - dh):
        assert not left
    assert len(placed) + len(left) == len(items)
    for p in placed:
        assert p.x + p.w <= W and p.y + p.h <= H
    return placed, left


def check_bins_short(items, delta):
    """Items with h <= delta: fewer than (2a+1)/(1-delta) bins."""
    n = nfdh_bins(items).num_bins
    assert n < (2 * total_area(items) + 1) / (1 - delta)
    return n


def check_bins_narrow(items, delta):
    """Items with w <= delta: fewer than 2a/(1-delta) + 3 bins."""
    n = nfdh_bins(items).num_bins
    assert n < 2 * total_area(items) / (1 - delta) + 3
    return n


def check_bins_small(items, dw, dh):
    """Items with w <= dw and h <= dh: at most a/((1-dw)(1-dh)) + 1/(1-dh) bins."""
    n = nfdh_bins(items).num_bins
    assert n <= total_area(items) / ((1 - dw) * (1 - dh)) + 1 / (1 - dh)
    return n


def area_lower_bound(items) -> int:
    return ceil(total_area(items))


def lb_family_cap(eps) -> Fraction:
    eps = Fraction(eps)
    return Fraction(3, 4) + eps / 2 - eps * eps / 4


def random_s2bp(rng, n_max=200, denom=100):
    """Random wide and tall pieces for greedyPack from a ``random.Random``."""
    from skewpack.s2bp import Piece

    n = rng.randint(0, n_max)
    n_wide = rng.randint(0, n)
    pieces_w, pieces_t = [], []
    for i in range(n):
        long_side = Fraction(rng.randint(denom // 2 + 1, denom), denom)
        short = Fraction(rng.randint(1, denom), denom)
        if i < n_wide:
            pieces_w.append(Piece(i, long_side, short, "wide"))
        else:
            pieces_t.append(Piece(i, short, long_side, "tall"))
    return pieces_w, pieces_t


def check_greedy_pack(wide, tall):
    """All greedyPack bounds on one input; returns the result."""
    from skewpack.s2bp import area_bound, greedy_pack

    res = greedy_pack(wide, tall)
    recs = res.bins
    assert res.num_bins <= area_bound(wide, tall)
    types = {r.type for r in recs}
    if types == {1, 2}:
        assert sum(1 for r in recs if not r.full) <= 2
    for t in (1, 2):
        full = [r for r in recs if r.type == t and r.full]
        a = sum((f.rect.area for r in full for f in r.wide + r.tall), Fraction(0))
        assert len(full) <= Fraction(4, 3) * a + Fraction(1, 3)
    # once |A - B| <= 1 it stays so
    diffs = [abs(r.A_before - r.B_before) for r in recs] + [Fraction(0)]
    for d0, d1 in zip(diffs, diffs[1:]):
        if d0 <= 1:
            assert d1 <= 1
    return res
