"""
Compartments on a coordinate grid
=================================

With eps = eps1 = 1/2 the grid of admissible x-coordinates is small enough
to build. A random fractional bin is discretized (wide items move onto grid
values, a little tall and small area is dropped) and then cut into wide
and tall compartments. Finally the whole compartmental packer runs on a
small instance with the geometric threshold schedule (ratio 1/10), which
is a desk-scale stand-in and is flagged as such in the layout meta.
"""

import sys
from fractions import Fraction as F
from pathlib import Path

from skewpack.core import Item, Rules, make_layout, validate_layout
from skewpack.instances import gen_fractional_bin
from skewpack.render import render_svg
from skewpack.skewedcpack import (Caps, compartmentalize_bin, discretize_bin, grid_T,
                                  skewed_cpack)

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)
half = F(1, 2)

R = [F(3, 4), F(5, 8)]
grid = grid_T(half, half, R)
print("grid values:", [str(v) for v in grid.values])
print(f"|T| = {grid.size}, bound {grid.t_bound(1)}, eps_cont = {grid.eps_cont}")

items, ps = gen_fractional_bin(7, R)
d = discretize_bin(ps, items, grid)
print(f"\ndiscretization dropped area {d.discarded_area} (must stay below {grid.eps})")
c = compartmentalize_bin(d.placements, items, grid)
kinds = [x.kind for x in c.compartments]
print(f"compartments: {kinds.count('wide')} wide, {kinds.count('tall')} tall; "
      f"extra area dropped {c.discarded_area}")
meta = {"compartments": [[{"kind": x.kind, "x": x.rect.x, "y": x.rect.y, "w": x.rect.w,
                           "h": x.rect.h} for x in c.compartments]]}
(out / "compartments.svg").write_text(render_svg(make_layout([c.placements], meta=meta),
                                                 items))

wide = [Item(i, F(3, 5) + F(i, 40), F(1, 25) + F(i, 400)) for i in range(4)]
tall = [Item(4 + i, F(1, 25) + F(i, 400), F(3, 5) + F(i, 40)) for i in range(4)]
layout = skewed_cpack(wide + tall, half, Caps(max_bins=2, max_candidates=50), F(1, 10))
print(f"\nskewed_cpack: {layout.num_bins} bin(s), valid "
      f"{validate_layout(wide + tall, layout, Rules.whole()).ok}, schedule "
      f"{layout.meta['medium']['threshold_schedule']}")
print(f"greedy discards {layout.meta['discard_area']} < bound {layout.meta['discard_bound']}")
(out / "skewed_cpack.svg").write_text(render_svg(layout, wide + tall))
print(f"SVG files written to {out}/")
