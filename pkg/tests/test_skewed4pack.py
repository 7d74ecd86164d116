from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from helpers import lb_family_cap
from skewpack.core import Item, Rect, Rules, SkewnessError, ceil, total_area, validate_layout
from skewpack.grouping import WIDTH, lingroup
from skewpack.guillotine import count_stages, extract_guillotine_tree
from skewpack.instances import gen_lower_bound, gen_random_skewed
from skewpack.skewed4pack import (Container, _assign_classes, _class_table, _classes,
                                  enum_horizontal_configs, skewed4pack, solve_shelf_lp)


def test_configs_single_width():
    configs = enum_horizontal_configs([F(3, 5)])
    assert sorted((c.s0, c.counts) for c in configs) == [(0, (0,)), (0, (1,)), (1, (0,)),
                                                        (1, (1,))]


def test_configs_no_widths():
    assert sorted((c.s0, c.counts) for c in enum_horizontal_configs([])) == [(0, ()), (1, ())]


def test_configs_two_widths():
    configs = enum_horizontal_configs([F(3, 10), F(2, 5)])
    pairs = {c.counts for c in configs}
    assert len(pairs) == 8 and len(configs) == 16
    assert all(F(3, 10) * a + F(2, 5) * b <= 1 for a, b in pairs)


def test_configs_reject_duplicates():
    with pytest.raises(ValueError):
        enum_horizontal_configs([F(3, 5), F(3, 5)])


def test_shelf_lp_one_class():
    sol, configs, shelves = solve_shelf_lp([(F(3, 5), F(5, 2))])
    assert sol.objective_value == F(5, 2)
    assert len(shelves) == 1 and shelves[0].config.counts == (1,)


def test_shelf_lp_small_only():
    sol, configs, shelves = solve_shelf_lp([], small_area=F(3, 10))
    assert len(shelves) == 1
    assert shelves[0].config.s0 == 1 and shelves[0].extent == F(3, 10)


def test_shelf_lp_empty():
    sol, configs, shelves = solve_shelf_lp([])
    assert shelves == [] and sol.objective_value == 0


def test_container_greedy_discards_overshooting_item():
    members = [Item(0, F(3, 5), F(1, 2)), Item(1, F(3, 5), F(1, 2)), Item(2, F(3, 5), F(1, 5))]
    originals = {it.id: it for it in members}
    c = Container(1, Rect(F(0), F(0), F(3, 5), F(1)), 0)
    placed, discarded = _assign_classes([c], [members], originals, "wide")
    assert [p.item_id for _, p in placed] == [0, 1]
    assert [it.id for it in discarded] == [2]


def test_no_items_no_discards():
    assert _assign_classes([], [], {}, "wide") == ([], [])


def _stages_ok(layout, limit):
    for b in layout.bins:
        tree = extract_guillotine_tree(b)
        assert tree, f"bin {b.bin_index} is not guillotinable"
        assert count_stages(tree) <= limit


def _discards_ok(stats):
    assert stats["discard_area_wide"] < stats["discard_cap_wide"]
    assert stats["discard_area_tall"] < stats["discard_cap_tall"]


def test_single_wide_item():
    res = skewed4pack([Item(0, F(9, 10), F(1, 100))], F(1, 2), F(1, 2), F(1, 2))
    assert res.num_bins == 1


def test_lower_bound_family_m2_k4():
    inst, ref = gen_lower_bound(2, 4, F(1, 5))
    delta = max(min(it.w, it.h) for it in inst.items)
    res = skewed4pack(inst.items, F(1, 4), delta, delta)
    assert validate_layout(inst, res.layout, Rules.whole()).ok
    _stages_ok(res.layout, 4)
    _discards_ok(res.stats)
    assert res.num_bins >= ceil(2 * (1 - F(1, 25)) / lb_family_cap(F(1, 5)))


def test_many_narrow_items():
    inst = gen_random_skewed(100, F(1, 20), F(1, 20), 42, "tall-heavy")
    items = [it for it in inst.items if it.w <= F(1, 20)]
    res = skewed4pack(items, F(1, 4), F(1, 20), F(1, 20))
    assert validate_layout(items, res.layout, Rules.whole()).ok
    assert res.num_bins >= ceil(total_area(items))


def test_non_skewed_item_named():
    with pytest.raises(SkewnessError) as exc:
        skewed4pack([Item(7, F(1, 2), F(1, 2))], F(1, 4), F(1, 16), F(1, 16))
    assert 7 in exc.value.offenders


def test_eps_must_be_reciprocal():
    with pytest.raises(ValueError):
        skewed4pack([], F(2, 5), F(1, 16), F(1, 16))


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from(["balanced", "wide-heavy", "tall-heavy",
                                                "small-mix"]), st.integers(0, 60))
def test_random_runs_are_four_stage_and_valid(seed, profile, n):
    inst = gen_random_skewed(n, F(1, 16), F(1, 16), seed, profile)
    res = skewed4pack(inst.items, F(1, 4), F(1, 16), F(1, 16))
    assert validate_layout(inst, res.layout, Rules.whole()).ok
    _stages_ok(res.layout, 4)
    _discards_ok(res.stats)
    assert res.num_bins >= ceil(inst.area)


@given(st.lists(st.tuples(st.integers(51, 100), st.integers(1, 40)), min_size=1, max_size=25))
def test_shelf_lp_structure(dims):
    eps = F(1, 4)
    items = [Item(k, F(w, 100), F(h, 1000)) for k, (w, h) in enumerate(dims)]
    table = _class_table(_classes(lingroup(items, eps, eps, WIDTH), WIDTH), WIDTH)
    sol, configs, shelves = solve_shelf_lp(table)
    assert len(sol.support) <= 1 / (eps * eps) + 1
    assert all(s.span > F(1, 2) for s in shelves)
    assert sol.objective_value == sum(s.extent for s in shelves)
    # shelves keep the area of the rounded items
    assert sum(s.span * s.extent for s in shelves) == sum(w * h for w, h in table)
