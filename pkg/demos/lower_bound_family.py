"""
Why guillotine packings need a third more bins
==============================================

Each bin of the reference layout holds four stacks of thin items around an
empty centre square. No end-to-end cut exists in such a bin, and any
guillotine bin holds at most 3/4 + eps/2 - eps^2/4 of item area, so
guillotine packings need about 4m/3 bins for m reference bins.
"""

import sys
from fractions import Fraction as F
from pathlib import Path

from skewpack.core import Rules, ceil, validate_layout
from skewpack.guillotine import extract_guillotine_tree, guillotine_area_cap
from skewpack.instances import gen_lower_bound
from skewpack.oracle import oracle_opt
from skewpack.render import render_svg
from skewpack.skewed4pack import skewed4pack

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)
eps = F(1, 5)

inst, ref = gen_lower_bound(1, 1, eps)
print("m = k = 1:", [(str(it.w), str(it.h)) for it in inst.items])
print("  reference bins:", ref.num_bins, "valid:", validate_layout(inst, ref, Rules.whole()).ok)
print("  reference bin guillotinable:", bool(extract_guillotine_tree(ref.bins[0])))
print("  oracle:", oracle_opt(inst)[0], " guillotine oracle:", oracle_opt(inst, guillotine=True)[0])
(out / "reference_m1.svg").write_text(render_svg(ref, inst.items))

cap = guillotine_area_cap(eps)
print(f"\narea cap of a guillotine bin: {cap}")
for m in (2, 3, 4):
    for k in (1, 4):
        inst, ref = gen_lower_bound(m, k, eps)
        short = (1 - eps) / (2 * k)
        res = skewed4pack(inst.items, eps, short, short)
        need = ceil(m * (1 - eps * eps) / cap)
        print(f"  m={m} k={k}: reference {ref.num_bins}, skewed4pack {res.num_bins}, "
              f"guillotine lower bound {need}")
inst, _ = gen_lower_bound(4, 4, eps)
res = skewed4pack(inst.items, eps, F(1, 10), F(1, 10))
(out / "skewed4pack_m4_k4.svg").write_text(render_svg(res.layout, inst.items, cuts=True))
print(f"\nSVG files written to {out}/")
