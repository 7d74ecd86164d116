from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import fractions
from helpers import check_bins_narrow, check_bins_short, check_bins_small, check_region, check_strip
from skewpack.core import Item, StructuralError, make_layout, validate_layout
from skewpack.nfdh import nfdh_bins, nfdh_into_region, nfdh_strip


def items_from(dims):
    return [Item(k, w, h) for k, (w, h) in enumerate(dims)]


def test_single_item_strip():
    sp = nfdh_strip([Item(0, F(1, 2), F(1, 2))])
    assert len(sp.shelves) == 1 and sp.total_height == F(1, 2)


def test_three_item_strip_by_hand():
    items = [Item(0, F(3, 5), F(2, 5)), Item(1, F(1, 2), F(3, 10)), Item(2, F(2, 5), F(1, 2))]
    sp = nfdh_strip(items)
    assert [s.height for s in sp.shelves] == [F(1, 2), F(3, 10)]
    assert [[p.item_id for p in s.placements] for s in sp.shelves] == [[2, 0], [1]]
    assert sp.total_height == F(4, 5)
    assert sp.total_height < 2 * F(59, 100) + F(1, 2)


def test_empty_inputs():
    assert nfdh_strip([]).total_height == 0
    assert nfdh_bins([]).num_bins == 0
    assert nfdh_into_region([], 1, 1) == ([], [])


def test_too_wide_item_is_refused():
    with pytest.raises(StructuralError):
        nfdh_strip([Item(0, F(1), F(1, 2))], strip_width=F(1, 2))


def test_one_thin_item_one_bin():
    assert nfdh_bins([Item(0, F(9, 10), F(1, 20))]).num_bins == 1


def test_forty_narrow_items():
    items = [Item(k, F(3, 10), F(1, 20)) for k in range(40)]
    layout = nfdh_bins(items)
    # three items per shelf, 14 shelves of height 1/20 fit one bin
    assert layout.num_bins == 1
    shelves = {p.y for p in layout.bins[0].placements}
    assert len(shelves) == 14
    assert layout.num_bins < (2 * F(3, 5) + 1) / (1 - F(1, 20))


def test_region_sufficiency_examples():
    items = [Item(k, F(1, 10), F(1, 10)) for k in range(20)]  # area 1/5
    placed, left = nfdh_into_region(items, F(7, 10), F(7, 10))
    assert not left
    placed, left = nfdh_into_region(items, F(1, 2), F(1, 2))
    assert len(placed) + len(left) == 20
    placed, left = nfdh_into_region([Item(0, F(1, 10), F(1, 10))], F(1, 5), F(1, 5))
    assert len(placed) == 1 and not left


def test_region_offset():
    placed, _ = nfdh_into_region([Item(0, F(1, 4), F(1, 4))], 1, 1, F(1, 2), F(1, 3))
    assert (placed[0].x, placed[0].y) == (F(1, 2), F(1, 3))


dims = st.tuples(fractions(0, 1, 40), fractions(0, 1, 40))


@given(st.lists(dims, max_size=40))
def test_strip_bound(ds):
    items = items_from(ds)
    sp = check_strip(items)
    hs = [s.height for s in sp.shelves]
    assert hs == sorted(hs, reverse=True)
    for s in sp.shelves:
        assert sum(p.w for p in s.placements) <= 1
        assert all(p.y == s.y_base for p in s.placements)


@given(st.lists(dims, max_size=40))
def test_bins_valid(ds):
    items = items_from(ds)
    layout = nfdh_bins(items)
    assert validate_layout(items, layout).ok


@given(st.lists(st.tuples(fractions(0, 1, 40), fractions(0, F(1, 10), 400)), max_size=60))
def test_short_items_bin_bound(ds):
    check_bins_short(items_from(ds), F(1, 10))


@given(st.lists(st.tuples(fractions(0, F(1, 10), 400), fractions(0, 1, 40)), max_size=60))
def test_narrow_items_bin_bound(ds):
    check_bins_narrow(items_from(ds), F(1, 10))


@given(st.lists(st.tuples(fractions(0, F(1, 8), 400), fractions(0, F(1, 5), 400)),
                max_size=80))
def test_small_items_bin_bound(ds):
    check_bins_small(items_from(ds), F(1, 8), F(1, 5))


@given(st.lists(st.tuples(fractions(0, F(1, 10), 400), fractions(0, F(1, 10), 400)),
                max_size=40), fractions(F(1, 5), 1, 20), fractions(F(1, 5), 1, 20))
def test_region_bound(ds, W, H):
    check_region(items_from(ds), W, H, F(1, 10), F(1, 10))


@given(st.lists(dims, max_size=30))
def test_nfdw_is_transposed_nfdh(ds):
    items = items_from(ds)
    a = nfdh_bins(items, transpose=True)
    b = nfdh_bins([i.transposed() for i in items])
    assert [[p.transposed() for p in bin_.placements] for bin_ in a.bins] == \
        [list(bin_.placements) for bin_ in b.bins]
    assert validate_layout(items, make_layout([list(x.placements) for x in a.bins])).ok
