from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from skewpack.core import Item, Rules, ceil, make_layout, validate_layout
from skewpack.guillotine import stage_counts
from skewpack.instances import gen_fractional_bin, gen_lower_bound, gen_random_skewed, is_skewed
from skewpack.oracle import ExceedsMax, OracleBudgetExceeded, oracle_opt
from skewpack.skewedcpack import fractional_rules


def test_lower_bound_m1_k1():
    inst, ref = gen_lower_bound(1, 1, F(1, 5))
    dims = sorted((it.w, it.h) for it in inst.items)
    assert dims == [(F(2, 5), F(3, 5))] * 2 + [(F(3, 5), F(2, 5))] * 2
    assert ref.num_bins == 1
    assert validate_layout(inst, ref, Rules.whole()).ok


def test_lower_bound_m3_k2():
    inst, ref = gen_lower_bound(3, 2, F(1, 5))
    assert len(inst) == 24 and ref.num_bins == 3
    assert validate_layout(inst, ref, Rules.whole()).ok


@given(st.integers(1, 4), st.integers(1, 4), st.sampled_from([F(1, 5), F(1, 4), F(1, 10)]))
def test_lower_bound_area_and_reference(m, k, eps):
    inst, ref = gen_lower_bound(m, k, eps)
    assert inst.area == m * (1 - eps * eps)
    assert ref.num_bins == m and inst.meta["opt"] == m
    assert validate_layout(inst, ref, Rules.whole()).ok


def test_lower_bound_rejects_bad_parameters():
    with pytest.raises(ValueError):
        gen_lower_bound(0, 1, F(1, 5))


def test_random_empty():
    assert len(gen_random_skewed(0, F(1, 16), F(1, 16), 1)) == 0


def test_random_balanced_is_skewed():
    delta = F(1, 16)
    inst = gen_random_skewed(100, delta, delta, 42)
    assert len(inst) == 100
    assert all(is_skewed(it, delta) for it in inst.items)
    # no item is above delta in both directions
    assert not [it for it in inst.items if it.w > delta and it.h > delta]


def test_small_mix_has_small_items():
    delta = F(1, 16)
    inst = gen_random_skewed(10, delta, delta, 3, "small-mix")
    assert any(it.w <= delta and it.h <= delta for it in inst.items)


def test_unknown_profile():
    with pytest.raises(ValueError):
        gen_random_skewed(5, F(1, 16), F(1, 16), 0, "square")


def test_random_is_deterministic():
    a = gen_random_skewed(30, F(1, 16), F(1, 8), 9, "wide-heavy")
    b = gen_random_skewed(30, F(1, 16), F(1, 8), 9, "wide-heavy")
    assert a == b


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_fractional_bins_validate(seed):
    R = [F(3, 4), F(5, 8)]
    items, ps = gen_fractional_bin(seed, R)
    assert validate_layout(items, make_layout([ps]), fractional_rules()).ok
    for it in items:
        if it.kind == "wide":
            assert it.w in R
        if it.kind == "tall":
            assert it.h > F(1, 2)


# ---------------------------------------------------------------- oracle


def sq(n, s):
    return [Item(k, s, s) for k in range(n)]


def test_two_big_squares_need_two_bins():
    assert oracle_opt(sq(2, F(3, 5)))[0] == 2


def test_four_quarters_fit_one_bin():
    opt, layout = oracle_opt(sq(4, F(1, 2)))
    assert opt == 1
    assert validate_layout(sq(4, F(1, 2)), layout, Rules.whole()).ok


def test_footnote_family_plain_and_guillotine():
    inst, _ = gen_lower_bound(1, 1, F(1, 5))
    assert oracle_opt(inst)[0] == 1
    opt_g, layout = oracle_opt(inst, guillotine=True)
    assert opt_g == 2
    assert None not in stage_counts(layout)


def test_empty_instance():
    assert oracle_opt([])[0] == 0


def test_exceeds_max():
    with pytest.raises(ExceedsMax):
        oracle_opt(sq(3, F(3, 5)), max_bins=2)


def test_node_limit():
    items = [Item(k, F(k + 20, 100), F(47 - k, 100)) for k in range(9)]
    with pytest.raises(OracleBudgetExceeded):
        oracle_opt(items, node_limit=1)


def test_too_many_items():
    with pytest.raises(ValueError):
        oracle_opt(sq(13, F(1, 10)))


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(1, 10), st.integers(1, 10)), min_size=1, max_size=4))
def test_oracle_is_sound(dims):
    items = [Item(k, F(w, 10), F(h, 10)) for k, (w, h) in enumerate(dims)]
    opt, layout = oracle_opt(items)
    assert validate_layout(items, layout, Rules.whole()).ok and layout.num_bins == opt
    assert opt >= ceil(sum(it.area for it in items))
    opt_g, layout_g = oracle_opt(items, guillotine=True)
    assert validate_layout(items, layout_g, Rules.whole()).ok
    assert opt_g >= opt
