from fractions import Fraction as F

import pytest
from hypothesis import given

from skewpack.core import BinLayout, Placement, StructuralError
from skewpack.guillotine import (NotGuillotinable, count_stages, extract_guillotine_tree,
                                 guillotine_area_cap, tree_placements)
from test_core import guillotine_layouts


def _bin(rects, sx=1, sy=1):
    ps = tuple(Placement(k, F(x) / sx, F(y) / sy, F(w) / sx, F(h) / sy)
               for k, (x, y, w, h) in enumerate(rects))
    return BinLayout(0, ps)


def d(s):
    return F(s)


PINWHEEL = [("0", "0", "1.8", "1.2"), ("1.8", "0", "1.2", "1.8"), ("0", "1.2", "1.2", "1.8"),
            ("1.2", "1.8", "1.8", "1.2")]
SIX_ITEMS = [("0", "0", "1.2", "0.6"), ("1.8", "0", "1.2", "0.6"), ("0", "0.6", "0.6", "1.8"),
             ("2.4", "0.6", "0.6", "1.8"), ("1.2", "0", "0.6", "1.8"),
             ("0.6", "1.8", "1.8", "0.6")]
THREE_STAGE = [("0", "0", "0.8", "2.4"), ("0.8", "0", "0.6", "2.4"), ("1.4", "0", "0.8", "2"),
               ("0", "2.4", "1.1", "1.6"), ("1.1", "2.4", "1.3", "1.4"),
               ("2.4", "0", "0.8", "2.8"), ("3.2", "0", "0.8", "3.2"),
               ("2.4", "3.2", "1.6", "0.6")]


def _scaled(rects, sx, sy):
    return _bin([tuple(d(v) for v in r) for r in rects], d(sx), d(sy))


def test_pinwheel_not_guillotinable():
    tree = extract_guillotine_tree(_scaled(PINWHEEL, 3, 3))
    assert isinstance(tree, NotGuillotinable) and not tree
    assert tree.items == (0, 1, 2, 3)


def test_six_item_ring_not_guillotinable():
    assert isinstance(extract_guillotine_tree(_scaled(SIX_ITEMS, 3, "2.4")), NotGuillotinable)


def test_three_stage_layout():
    b = _scaled(THREE_STAGE, 4, 4)
    tree = extract_guillotine_tree(b)
    assert tree and count_stages(tree) == 3
    assert tree.cut_axis == "vertical"
    assert sorted(p.item_id for p in tree_placements(tree, b)) == list(range(8))


def test_single_item_needs_no_stage():
    tree = extract_guillotine_tree(_bin([(F(1, 4), F(1, 4), F(1, 2), F(1, 3))]))
    assert tree and count_stages(tree) == 0


def test_empty_bin():
    tree = extract_guillotine_tree(_bin([]))
    assert tree.kind == "leaf" and count_stages(tree) == 0


def test_side_by_side_is_one_stage():
    tree = extract_guillotine_tree(_bin([(0, 0, F(1, 2), 1), (F(1, 2), 0, F(1, 2), 1)]))
    assert count_stages(tree) == 1


def test_overlap_is_refused():
    with pytest.raises(StructuralError):
        extract_guillotine_tree(_bin([(0, 0, F(3, 5), F(3, 5)), (0, 0, F(3, 5), F(3, 5))]))


def test_area_cap_value():
    assert guillotine_area_cap(F(1, 5)) == F(3, 4) + F(1, 10) - F(1, 100)


@given(guillotine_layouts())
def test_generated_guillotine_layouts_are_recognised(rects):
    b = BinLayout(0, tuple(Placement(k, r.x, r.y, r.w, r.h) for k, r in enumerate(rects)))
    tree = extract_guillotine_tree(b)
    assert tree and count_stages(tree) <= 3  # built from three cut levels
    leaves = [leaf for leaf in tree.leaves() if leaf.item is not None]
    assert sorted(leaf.item for leaf in leaves) == list(range(len(rects)))
    for leaf in leaves:
        r, p = leaf.region, b.placements[leaf.item]
        assert r.x <= p.x and r.y <= p.y and p.x + p.w <= r.x2 and p.y + p.h <= r.y2
