"""
Four-stage packing of random skewed items
=========================================

Random (delta, delta)-skewed instances are packed by skewed4pack and by
plain NFDH. Every skewed4pack bin is checked for a guillotine cut tree with
at most four stages; the area bound ceil(a) is printed for reference.
"""

from fractions import Fraction as F

from skewpack.core import Rules, ceil, validate_layout
from skewpack.guillotine import stage_counts
from skewpack.instances import gen_random_skewed
from skewpack.nfdh import nfdh_bins
from skewpack.skewed4pack import skewed4pack

delta = F(1, 16)
print(f"{'profile':<11} {'n':>4} {'ceil(a)':>7} {'nfdh':>5} {'skewed4pack':>11} {'stages':>6}")
for profile in ("balanced", "wide-heavy", "tall-heavy", "small-mix"):
    for n in (50, 200):
        inst = gen_random_skewed(n, delta, delta, seed=n, profile=profile)
        res = skewed4pack(inst.items, F(1, 4), delta, delta)
        assert validate_layout(inst, res.layout, Rules.whole()).ok
        stages = stage_counts(res.layout)
        print(f"{profile:<11} {n:>4} {ceil(inst.area):>7} {nfdh_bins(inst.items).num_bins:>5} "
              f"{res.num_bins:>11} {max(stages):>6}")

# the statistics record how much area the container filling discarded
st = res.stats
print(f"\nlast run: discarded wide area {float(st['discard_area_wide']):.4f} "
      f"< cap {float(st['discard_cap_wide']):.4f}")
