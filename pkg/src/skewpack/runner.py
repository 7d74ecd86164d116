"""Uniform entry point to the packers, shared by the CLI and the benchmark.

Each algorithm takes an :class:`Instance` and a parameter dict and returns a
layout together with the validation rules it must satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import HORIZONTAL, VERTICAL, Instance, Layout, Rules, StructuralError, rat
from .nfdh import nfdh_bins
from .s2bp import HALF, Piece, greedy_pack
from .skewed4pack import skewed4pack
from .skewedcpack import Caps, skewed_cpack

ALGORITHMS = ("nfdh", "nfdw", "s2bp", "skewed4pack", "skewedcpack")

DEFAULTS = {
    "eps": Fraction(1, 4),
    "delta_w": Fraction(1, 16),
    "delta_h": Fraction(1, 16),
    "f_override": None,
    "max_candidates": Caps.max_candidates,
    "max_bins": Caps.max_bins,
}


@dataclass(frozen=True)
class RunResult:
    layout: Layout
    rules_name: str

    @property
    def rules(self) -> Rules:
        return rules_by_name(self.rules_name)


def rules_by_name(name: str) -> Rules:
    if name == "whole":
        return Rules.whole()
    if name == "sliceable":
        return Rules.sliceable()
    if name == "s2bp":
        return Rules({"wide": frozenset({HORIZONTAL}), "tall": frozenset({VERTICAL})},
                     shape_kinds=True)
    raise ValueError(f"unknown rule set {name!r}")


def s2bp_split(items):
    """Wide and tall pieces of an instance; untagged items are sorted by shape."""
    wide, tall = [], []
    for it in items:
        kind = it.kind
        if kind is None:
            kind = "wide" if it.w > HALF else "tall" if it.h > HALF else None
        if kind == "wide":
            wide.append(Piece(it.id, it.w, it.h, "wide"))
        elif kind == "tall":
            tall.append(Piece(it.id, it.w, it.h, "tall"))
        else:
            raise StructuralError(f"item {it.id} is neither wide nor tall")
    return wide, tall


def run_algorithm(name: str, instance: Instance, params=None) -> RunResult:
    p = dict(DEFAULTS)
    p.update({k: v for k, v in (params or {}).items() if v is not None})
    items = list(instance.items)
    if name == "nfdh":
        return RunResult(nfdh_bins(items), "whole")
    if name == "nfdw":
        return RunResult(nfdh_bins(items, transpose=True), "whole")
    if name == "s2bp":
        wide, tall = s2bp_split(items)
        res = greedy_pack(wide, tall)
        meta = dict(res.layout.meta)
        meta.update(horizontal_cuts=res.horizontal_cut_count,
                    vertical_cuts=res.vertical_cut_count, rules="s2bp")
        return RunResult(Layout(res.layout.bins, res.layout.discarded, meta), "s2bp")
    if name == "skewed4pack":
        res = skewed4pack(items, rat(p["eps"]), rat(p["delta_w"]), rat(p["delta_h"]))
        return RunResult(res.layout, "whole")
    if name == "skewedcpack":
        caps = Caps(max_bins=int(p["max_bins"]), max_candidates=int(p["max_candidates"]))
        rho = None if p["f_override"] is None else rat(p["f_override"])
        return RunResult(skewed_cpack(items, rat(p["eps"]), caps, rho), "whole")
    raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
