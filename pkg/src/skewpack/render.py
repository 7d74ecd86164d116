"""SVG drawings of layouts.

Bins are drawn side by side as unit squares, y pointing up. Items are
coloured by kind; compartments recorded in the layout meta are drawn as
outlines and guillotine cuts, when requested, as dashed lines.
"""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .core import Layout
from .guillotine import NotGuillotinable, extract_guillotine_tree

COLORS = {"wide": "#4c78a8", "tall": "#f58518", "small": "#54a24b", None: "#bab0ac"}
SLICE_STROKE = "#222222"


def _f(v) -> str:
    return f"{float(v):.3f}"


def render_svg(layout: Layout, items=None, scale: int = 240, gap: int = 20,
               cuts: bool = False) -> str:
    """Return an SVG document for ``layout``.

    ``items`` (an iterable of items) supplies the kinds used for colours.
    With ``cuts=True`` every guillotinable bin gets its cut lines drawn.
    """
    kinds = {it.id: it.kind for it in items or ()}
    n = max(layout.num_bins, 1)
    width = n * scale + (n + 1) * gap
    height = scale + 2 * gap + 16
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="10">']
    comps = layout.meta.get("compartments") if isinstance(layout.meta, dict) else None

    for k, b in enumerate(layout.bins):
        ox = gap + k * (scale + gap)
        oy = gap

        def box(x, y, w, h):
            # flip y so the bin origin is bottom left
            X = ox + float(x) * scale
            Y = oy + (1 - float(y) - float(h)) * scale
            return _f(X), _f(Y), _f(float(w) * scale), _f(float(h) * scale)

        out.append(f'<g id="bin-{k}">')
        out.append('<rect x="{}" y="{}" width="{}" height="{}" fill="white" '
                   'stroke="black"/>'.format(*box(0, 0, 1, 1)))
        for p in b.placements:
            x, y, w, h = box(p.x, p.y, p.w, p.h)
            fill = COLORS.get(kinds.get(p.item_id), COLORS[None])
            dash = ' stroke-dasharray="2,1"' if p.slice is not None else ""
            out.append(f'<rect x="{x}" y="{y}" width="{w}" height="{h}" fill="{fill}" '
                       f'fill-opacity="0.8" stroke="{SLICE_STROKE}" stroke-width="0.5"{dash}>'
                       f'<title>item {p.item_id}: {escape(str(p.w))} x {escape(str(p.h))}'
                       f'</title></rect>')
        if comps and k < len(comps):
            for c in comps[k]:
                x, y, w, h = box(Fraction(c["x"]), Fraction(c["y"]), Fraction(c["w"]),
                                 Fraction(c["h"]))
                color = COLORS.get(c["kind"], "black")
                out.append(f'<rect x="{x}" y="{y}" width="{w}" height="{h}" fill="none" '
                           f'stroke="{color}" stroke-width="2"/>')
        if cuts:
            tree = extract_guillotine_tree(b)
            if not isinstance(tree, NotGuillotinable):
                for axis, coord, region in tree.cut_lines():
                    if axis == "vertical":
                        x1, y1, _, hh = box(coord, region.y, 0, region.h)
                        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x1}" '
                                   f'y2="{_f(float(y1) + float(hh))}" stroke="red" '
                                   'stroke-width="0.8" stroke-dasharray="4,2"/>')
                    else:
                        x1, y1, ww, _ = box(region.x, coord, region.w, 0)
                        out.append(f'<line x1="{x1}" y1="{y1}" x2="{_f(float(x1) + float(ww))}" '
                                   f'y2="{y1}" stroke="red" stroke-width="0.8" '
                                   'stroke-dasharray="4,2"/>')
        ann = dict(b.annotations)
        label = f"bin {k}" + (f" ({escape(str(ann.get('source') or ann.get('type')))})"
                              if ann else "")
        out.append(f'<text x="{_f(ox)}" y="{_f(oy + scale + 14)}">{label}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
