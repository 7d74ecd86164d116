"""Reading and writing instances and layouts as JSON.

Rationals are written as strings (``"3/5"``) so files round-trip exactly.
Output is canonical: keys sorted, fixed separators, trailing newline.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .core import (BinLayout, Instance, Item, Layout, Placement, Slice, StructuralError, rat,
                   rat_str)

VERSION = 1


def _plain(value):
    """Turn Fractions (and containers of them) into JSON-ready values."""
    if isinstance(value, Fraction):
        return rat_str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    return value


def dumps(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def instance_to_json(inst: Instance) -> dict:
    items = []
    for it in inst.items:
        row = {"id": it.id, "w": rat_str(it.w), "h": rat_str(it.h)}
        if it.kind is not None:
            row["kind"] = it.kind
        items.append(row)
    out = {"version": VERSION, "items": items}
    if inst.meta:
        out["meta"] = _plain(dict(inst.meta))
    return out


def instance_from_json(data: dict) -> Instance:
    if not isinstance(data, dict) or "items" not in data:
        raise StructuralError("instance JSON needs an 'items' list")
    if data.get("version", VERSION) != VERSION:
        raise StructuralError(f"unsupported instance version {data.get('version')}")
    items = []
    for row in data["items"]:
        try:
            items.append(Item(int(row["id"]), rat(row["w"]), rat(row["h"]), row.get("kind")))
        except KeyError as exc:
            raise StructuralError(f"item row missing field {exc}") from exc
    items.sort(key=lambda it: it.id)
    return Instance(tuple(items), data.get("meta", {}))


def layout_to_json(layout: Layout) -> dict:
    bins = []
    for b in layout.bins:
        rows = []
        for p in b.placements:
            sl = None
            if p.slice is not None:
                sl = {"parent_id": p.slice.parent_id, "cut_axis": p.slice.cut_axis}
            rows.append({"item": p.item_id, "x": rat_str(p.x), "y": rat_str(p.y),
                         "w": rat_str(p.w), "h": rat_str(p.h), "slice": sl})
        entry = {"placements": rows}
        if b.annotations:
            entry["annotations"] = _plain(dict(b.annotations))
        bins.append(entry)
    return {"bins": bins, "discarded": list(layout.discarded),
            "meta": _plain(dict(layout.meta))}


def layout_from_json(data: dict) -> Layout:
    if not isinstance(data, dict) or "bins" not in data:
        raise StructuralError("layout JSON needs a 'bins' list")
    bins = []
    for k, entry in enumerate(data["bins"]):
        placements = []
        for row in entry.get("placements", []):
            sl = row.get("slice")
            if sl is not None:
                sl = Slice(int(sl["parent_id"]), sl["cut_axis"])
            placements.append(Placement(int(row["item"]), rat(row["x"]), rat(row["y"]),
                                        rat(row["w"]), rat(row["h"]), sl))
        bins.append(BinLayout(k, tuple(placements), entry.get("annotations", {})))
    return Layout(tuple(bins), tuple(int(i) for i in data.get("discarded", [])),
                  data.get("meta", {}))


def read_instance(path) -> Instance:
    return instance_from_json(json.loads(Path(path).read_text()))


def read_layout(path) -> Layout:
    return layout_from_json(json.loads(Path(path).read_text()))


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj))
