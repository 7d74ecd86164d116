"""The compartmental packer: round, enumerate compartment packings, fill the best one.

For every compartment packing ``P`` in the capped stream the feasibility
programs decide whether the rounded wide and tall items fit; if they do,
the greedy step packs whole items into ``P`` and the discarded items
together with the removed medium items are packed by NFDH into extra
bins. The layout with the fewest bins wins, the earliest in stream order
on ties.
"""

from __future__ import annotations

from dataclasses import asdict
from fractions import Fraction
from typing import Sequence

from ..core import ZERO, Item, ceil, classify_items, make_layout, rat, total_area
from ..grouping import HEIGHT, WIDTH, lingroup, remove_medium
from ..nfdh import nfdh_bins
from ..skewed4pack import _class_table, _classes
from .compartments import TALL, WIDE
from .enumeration import Caps, iter_compartment_packings
from .feasibility import Feasible, solve_feasibility
from .greedy import greedy_cpack
from .grid import MAX_GRID, grid_T


def _describe(P):
    return [[{"kind": c.kind, "x": str(c.rect.x), "y": str(c.rect.y),
              "w": str(c.rect.w), "h": str(c.rect.h)} for c in comps] for comps in P.bins]


def _necessary(wide_table, tall_table):
    """Cheap conditions every feasible compartment packing meets."""
    wide_area = sum((w * h for w, h in wide_table), ZERO)
    tall_area = sum((h * w for h, w in tall_table), ZERO)
    widest = max((w for w, _ in wide_table), default=ZERO)
    highest = max((h for h, _ in tall_table), default=ZERO)

    def accept(P):
        wide = [c.rect for _, c in P.all() if c.kind == WIDE]
        tall = [c.rect for _, c in P.all() if c.kind == TALL]
        if wide_table and (sum((r.area for r in wide), ZERO) < wide_area
                           or max(r.w for r in wide) < widest):
            return False
        if tall_table and (sum((r.area for r in tall), ZERO) < tall_area
                           or max(r.h for r in tall) < highest):
            return False
        return True

    return accept


def skewed_cpack(items: Sequence[Item], eps, caps: Caps | None = None, f_override=None,
                 max_grid: int = MAX_GRID):
    """Pack skewed items with the compartmental method; returns a :class:`Layout`.

    Raises :class:`SkewnessError` if, after medium removal, some item is
    larger than the computed small threshold in both dimensions, and
    :class:`GridTooLarge` if the coordinate grid cannot be built.
    """
    eps = rat(eps)
    caps = caps or Caps()
    items = list(items)
    if not items:
        return make_layout([], meta={"algorithm": "skewedcpack", "eps": eps, "bins": 0})
    originals = {it.id: it for it in items}

    med = remove_medium(items, eps, f_override)
    eps1, eps2 = med.eps1, med.eps2
    kept = [it for it in items if it.id not in med.I_med]
    cls = classify_items(kept, eps1, eps2.upper)
    gw = lingroup(list(cls.wide), eps, eps1, WIDTH)
    gt = lingroup(list(cls.tall), eps, eps1, HEIGHT)
    wide_classes, tall_classes = _classes(gw, WIDTH), _classes(gt, HEIGHT)
    wide_table = _class_table(wide_classes, WIDTH)
    tall_table = _class_table(tall_classes, HEIGHT)
    grid = grid_T(eps, eps1, [w for w, _ in wide_table], max_size=max_grid)

    lower = max(ceil(total_area(items)), 1)
    rounded_area = total_area(gw.rounded) + total_area(gt.rounded)
    min_w = min((w for w, _ in wide_table), default=None)
    min_h = min((h for h, _ in tall_table), default=None)
    need = _necessary(wide_table, tall_table)
    stream = iter_compartment_packings(grid, caps, rounded_area, min_w, min_h, need)
    medium = [originals[i] for i in sorted(med.I_med)]

    best = None
    examined = feasible = 0
    for index, P in enumerate(stream):
        examined += 1
        sol = solve_feasibility(wide_table, tall_table, P)
        if not isinstance(sol, Feasible):
            continue
        feasible += 1
        res = greedy_cpack(P, sol, wide_classes, tall_classes, list(cls.small), originals,
                           grid, eps2.upper)
        extra = nfdh_bins([originals[i.id] for i in res.discarded] + medium)
        bins = [list(b) for b in res.bins if b] + [list(b.placements) for b in extra.bins]
        if best is None or len(bins) < len(best[0]):
            best = (bins, index, P, res, extra.num_bins)
            if len(bins) <= lower:
                break

    meta = {
        "algorithm": "skewedcpack",
        "eps": eps,
        "medium": med.meta(),
        "grid_size": grid.size,
        "eps_cont": grid.eps_cont,
        "wide_classes": len(wide_table),
        "tall_classes": len(tall_table),
        "caps": asdict(caps),
        "candidates_examined": examined,
        "candidates_feasible": feasible,
        "truncated": stream.truncated,
        "exhaustive": not stream.truncated,
        "lower_bound": lower,
    }
    if best is None:
        layout = nfdh_bins(items)
        meta.update(fallback="nfdh", note="no compartment packing within the caps is feasible")
        return make_layout([list(b.placements) for b in layout.bins], meta=meta)
    bins, index, P, res, n_extra = best
    meta.update(
        fallback=None,
        chosen_index=index,
        compartment_bins=P.num_bins,
        compartments=_describe(P),
        discard_area=res.discard_area,
        discard_bound=res.discard_bound,
        discarded_items=sorted(i.id for i in res.discarded),
        extra_nfdh_bins=n_extra,
    )
    n_core = len(bins) - n_extra
    annotations = [{"source": "compartments"}] * n_core + [{"source": "nfdh-discards"}] * n_extra
    return make_layout(bins, meta=meta, annotations=annotations)


def structural_bound(eps, opt) -> Fraction:
    """Bin-count bound ``(1+4eps)(1+eps)opt + 4 + 8eps + 2`` used for known optima."""
    eps = rat(eps)
    return (1 + 4 * eps) * (1 + eps) * opt + 4 + 8 * eps + 2
