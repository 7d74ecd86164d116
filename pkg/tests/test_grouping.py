from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import fractions
from skewpack.core import Item, StructuralError, substitute_items, total_area, validate_layout
from skewpack.grouping import (HEIGHT, WIDTH, ScheduleResolutionError, Threshold, lingroup,
                               medium_schedule, remove_medium, threshold_step)
from skewpack.nfdh import nfdh_bins


def test_linear_grouping_by_hand():
    ws = [F(9, 10), F(4, 5), F(7, 10), F(3, 5)]
    hs = [F(1, 2), F(3, 10), F(2, 5), F(1, 5)]
    items = [Item(k, w, h) for k, (w, h) in enumerate(zip(ws, hs))]
    g = lingroup(items, F(1, 2), F(1, 2))
    assert g.stack_height == F(7, 5)
    assert g.thresholds == (F(9, 10), F(9, 10), F(4, 5), F(7, 10))
    assert [it.w for it in g.rounded] == [F(9, 10), F(4, 5), F(7, 10), F(7, 10)]
    # the tied second group stays empty
    assert g.groups[1] == ()
    assert [it.h for it in g.rounded] == hs


def test_single_and_identical_items():
    g = lingroup([Item(0, F(3, 4), F(1, 10))], F(1, 4), F(1, 2))
    assert g.rounded[0].w == F(3, 4)
    same = [Item(k, F(3, 5), F(1, 7)) for k in range(9)]
    g = lingroup(same, F(1, 4), F(1, 2))
    assert g.distinct_values() == [F(3, 5)]


def test_grouping_needs_large_dimension():
    with pytest.raises(StructuralError):
        lingroup([Item(0, F(1, 2), F(1, 10))], F(1, 2), F(1, 2))


def test_height_axis():
    items = [Item(0, F(1, 10), F(9, 10)), Item(1, F(1, 10), F(7, 10))]
    g = lingroup(items, F(1, 2), F(1, 2), HEIGHT)
    assert all(r.h >= it.h for r, it in zip(g.rounded, items))
    assert [r.w for r in g.rounded] == [F(1, 10), F(1, 10)]


@st.composite
def wide_sets(draw):
    n = draw(st.integers(1, 40))
    ws = draw(st.lists(fractions(F(1, 4), 1, 200), min_size=n, max_size=n))
    hs = draw(st.lists(fractions(0, F(1, 4), 200), min_size=n, max_size=n))
    return [Item(k, w, h) for k, (w, h) in enumerate(zip(ws, hs))]


@given(wide_sets(), st.sampled_from([F(1, 2), F(1, 3), F(1, 4)]))
def test_grouping_properties(items, eps):
    eps1 = F(1, 4)
    g = lingroup(items, eps, eps1, WIDTH)
    assert len(g.distinct_values()) <= 1 / (eps * eps1)
    by_id = {it.id: it for it in items}
    for r in g.rounded:
        assert r.w >= by_id[r.id].w
        assert r.h == by_id[r.id].h
    # rounding is monotone
    order = sorted(items, key=lambda it: it.w)
    rw = {r.id: r.w for r in g.rounded}
    assert all(rw[a.id] <= rw[b.id] for a, b in zip(order, order[1:]))
    # any packing of the rounded items packs the originals
    layout = nfdh_bins(list(g.rounded))
    assert validate_layout(items, substitute_items(layout, by_id)).ok


# ------------------------------------------------------------------ medium removal


def test_first_threshold_at_one_half():
    sched = medium_schedule(F(1, 2), 4)
    assert sched[0] == Threshold(F(1, 2), True)
    assert sched[1] == Threshold(F(1, 10400), True)
    assert threshold_step(F(1, 2), F(1, 2)).value == F(1, 4) / (104 * 25)


def test_second_threshold_is_astronomically_small():
    sched = medium_schedule(F(1, 2), 4)
    mu2 = sched[2]
    assert mu2.exact
    assert mu2.describe().startswith("=1e-898")
    # later entries are only bounded from above
    assert not sched[3].exact and sched[3].upper < mu2.upper


def test_dimensions_avoiding_all_bands():
    # with a geometric schedule the bands are easy to avoid
    rho = F(1, 10)
    tiny = F(1, 2) * rho ** 4 / 2
    items = [Item(0, F(3, 4), tiny), Item(1, tiny, F(2, 3))]
    med = remove_medium(items, F(1, 2), f_override=rho)
    assert med.I_med == frozenset()
    assert med.r == 1 and med.eps1 == F(1, 2)


def test_uncertain_band_membership_is_reported():
    # the default schedule is only bounded from the third entry on
    mu2 = medium_schedule(F(1, 2), 4)[2].value
    items = [Item(0, F(3, 4), mu2 / 1000)]
    with pytest.raises(ScheduleResolutionError):
        remove_medium(items, F(1, 2))


def test_empty_instance():
    med = remove_medium([], F(1, 2))
    assert med.I_med == frozenset() and med.r == 1


def test_override_is_flagged():
    med = remove_medium([Item(0, F(1, 2), F(1, 2))], F(1, 2), f_override=F(1, 10))
    assert not med.conforming
    assert med.meta()["non_conforming"] is True
    assert [t.value for t in med.schedule[:3]] == [F(1, 2), F(1, 20), F(1, 200)]


def test_bad_parameters():
    with pytest.raises(ValueError):
        remove_medium([], F(2, 5))
    with pytest.raises(ValueError):
        remove_medium([], F(1, 2), f_override=F(3, 2))


def test_bounded_threshold_refuses_close_comparisons():
    t = Threshold(F(1, 100), False)
    assert t.below(F(1, 2))
    with pytest.raises(ScheduleResolutionError):
        t.below(F(1, 1000))
    with pytest.raises(ScheduleResolutionError):
        t.value


@given(st.lists(st.tuples(fractions(0, 1, 1000), fractions(0, 1, 1000)), max_size=30),
       st.sampled_from([F(1, 2), F(1, 4)]), st.sampled_from([F(1, 3), F(1, 10)]))
def test_medium_band_area(dims, eps, rho):
    items = [Item(k, w, h) for k, (w, h) in enumerate(dims)]
    med = remove_medium(items, eps, f_override=rho)
    removed = [it for it in items if it.id in med.I_med]
    assert total_area(removed) <= eps * total_area(items)
    lo, hi = med.eps2.value, med.eps1
    for it in items:
        if it.id not in med.I_med:
            assert not (lo < it.w <= hi) and not (lo < it.h <= hi)
