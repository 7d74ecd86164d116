"""Capped enumeration of bin packings of empty compartments.

Candidate compartments are

* wide: any pair of column boundaries as x-edges, any pair of lattice
  heights as y-edges;
* tall: one grid column wide, any pair of lattice heights.

The y lattice is ``y_divisions`` evenly spaced levels rounded down to
multiples of ``eps_cont``. Compartments too narrow (wide) or too low (tall)
for the smallest item of their kind cannot hold anything and are skipped,
as are compartments of a kind the instance does not have.

A bin configuration is a set of pairwise disjoint candidates within the
per-bin limits; the empty set is included. Configurations are ordered by
decreasing covered area, then by size and coordinates. Packings are
multisets of configurations, listed by bin count and then in
lexicographic order of configuration indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..core import ZERO, Rect, ceil, floor, interiors_overlap
from .compartments import TALL, WIDE, Compartment, CompartmentPacking
from .grid import GridT


@dataclass(frozen=True)
class Caps:
    max_bins: int = 4
    max_compartments_per_bin: int = 3
    max_candidates: int = 2000
    y_divisions: int = 2
    max_bin_configs: int = 20000


def y_levels(grid: GridT, divisions: int) -> tuple[Fraction, ...]:
    step = grid.eps_cont
    return tuple(sorted({floor(Fraction(k, divisions) / step) * step
                         for k in range(divisions + 1)}))


def candidate_compartments(grid: GridT, caps: Caps, min_wide_width=None,
                           min_tall_height=None) -> list[Compartment]:
    """Wide and tall candidate rectangles; ``None`` disables a kind."""
    cols = grid.columns
    ys = y_levels(grid, caps.y_divisions)
    ypairs = [(a, b) for a, b in itertools.combinations(ys, 2)]
    out = []
    if min_wide_width is not None:
        for a, b in itertools.combinations(cols, 2):
            if b - a >= min_wide_width:
                out.extend(Compartment(Rect(a, y1, b - a, y2 - y1), WIDE) for y1, y2 in ypairs)
    if min_tall_height is not None:
        for a, b in zip(cols, cols[1:]):
            out.extend(Compartment(Rect(a, y1, b - a, y2 - y1), TALL)
                       for y1, y2 in ypairs if y2 - y1 >= min_tall_height)
    return out


def _key(c: Compartment):
    r = c.rect
    return (c.kind, r.x, r.y, r.w, r.h)


def bin_configurations(candidates, grid: GridT, caps: Caps):
    """Disjoint subsets of ``candidates`` in stream order; returns (configs, truncated)."""
    cands = sorted(candidates, key=_key)
    limit = caps.max_compartments_per_bin
    found = []
    truncated = False

    def rec(start, chosen, n_wide, n_tall):
        nonlocal truncated
        if len(found) >= caps.max_bin_configs:
            truncated = True
            return
        found.append(tuple(chosen))
        if len(chosen) == limit:
            return
        for k in range(start, len(cands)):
            c = cands[k]
            wide = c.kind == WIDE
            if wide and n_wide >= grid.n_W or not wide and n_tall >= grid.n_H:
                continue
            if any(interiors_overlap(c.rect, o.rect) for o in chosen):
                continue
            chosen.append(c)
            rec(k + 1, chosen, n_wide + wide, n_tall + (not wide))
            chosen.pop()
            if truncated:
                return

    rec(0, [], 0, 0)
    found.sort(key=lambda cs: (-sum((c.rect.area for c in cs), ZERO), len(cs),
                               [_key(c) for c in cs]))
    return found, truncated


class PackingStream:
    """Iterable of :class:`CompartmentPacking`; ``truncated`` is set once iteration ends.

    ``max_candidates`` applies to each bin count separately, so a large
    configuration list cannot starve the larger bin counts. ``accept`` is an
    optional cheap necessary condition; rejected packings are not counted
    as candidates, but at most ``SCAN_FACTOR * max_candidates`` packings are
    looked at per bin count.
    """

    SCAN_FACTOR = 50

    def __init__(self, configs, min_bins, caps: Caps, configs_truncated=False, accept=None):
        self.configs = configs
        self.min_bins = min_bins
        self.caps = caps
        self.truncated = configs_truncated
        self.accept = accept
        self.emitted = 0

    def __iter__(self):
        cap = self.caps.max_candidates
        if cap <= 0:
            self.truncated = True
            return
        for m in range(max(self.min_bins, 1), self.caps.max_bins + 1):
            emitted = scanned = 0
            for combo in itertools.combinations_with_replacement(range(len(self.configs)), m):
                if emitted >= cap or scanned >= self.SCAN_FACTOR * cap:
                    self.truncated = True
                    break
                scanned += 1
                P = CompartmentPacking(tuple(self.configs[k] for k in combo))
                if self.accept is not None and not self.accept(P):
                    continue
                emitted += 1
                self.emitted += 1
                yield P


def iter_compartment_packings(grid: GridT, caps: Caps, area=ZERO, min_wide_width=None,
                              min_tall_height=None, accept=None) -> PackingStream:
    """Stream packings of empty compartments into ``ceil(area)`` to ``max_bins`` bins."""
    cands = candidate_compartments(grid, caps, min_wide_width, min_tall_height)
    configs, cut = bin_configurations(cands, grid, caps)
    return PackingStream(configs, max(ceil(area), 0), caps, cut, accept)
