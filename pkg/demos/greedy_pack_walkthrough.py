"""
Sliceable packing with greedyPack
=================================

Wide pieces (width above 1/2) may be cut horizontally and tall pieces
(height above 1/2) vertically. greedyPack fills one bin at a time and picks
the bin type from the remaining total height of wide pieces (A) against the
remaining total width of tall pieces (B).
"""

from fractions import Fraction as F

from skewpack.s2bp import Piece, area_bound, greedy_pack

# two 0.6 squares of each orientation: four of them never share a bin, but
# with one cut per axis two bins are enough
wide = [Piece(0, F(3, 5), F(3, 5), "wide"), Piece(1, F(3, 5), F(3, 5), "wide")]
tall = [Piece(2, F(3, 5), F(3, 5), "tall"), Piece(3, F(3, 5), F(3, 5), "tall")]
res = greedy_pack(wide, tall)
print(f"squares: {res.num_bins} bins, {res.horizontal_cut_count} horizontal and "
      f"{res.vertical_cut_count} vertical cut")
for b in res.layout.bins:
    print(f"  bin {b.bin_index} (type {b.annotations['type']}):")
    for p in b.placements:
        cut = f" sliced {p.slice.cut_axis}ly" if p.slice else ""
        print(f"    item {p.item_id} at ({p.x}, {p.y}) size {p.w} x {p.h}{cut}")

# a trace of A and B before every bin
wide = [Piece(i, F(4, 5), F(1, 2), "wide") for i in range(3)]
tall = [Piece(3 + i, F(1, 2), F(4, 5), "tall") for i in range(2)]
res = greedy_pack(wide, tall)
print("\nthree wide, two tall:")
for k, r in enumerate(res.bins, start=1):
    print(f"  bin {k}: A = {r.A_before}, B = {r.B_before} -> type {r.type}, "
          f"{'full' if r.full else 'not full'}")
print(f"  bound max(ceil hsum, ceil wsum, 4a/3 + 8/3) = {area_bound(wide, tall)}")
