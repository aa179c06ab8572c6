"""Page charts (ASCII and SVG) and the JSON result document."""

from __future__ import annotations

import json
from xml.sax.saxutils import escape

from ..op_algebra import (
    DELTA_SQ2SQ1,
    Q1,
    SQ2,
    SQ2_PR,
    SQ2_RHO,
    SQ3SQ1,
    TAU,
    TAU_PR,
    format_sum,
)
from ..slice_pages import Component
from ..ss_engine import PageRegion

__all__ = ["OP_COLORS", "render_chart", "region_to_document", "dump_document", "component_text"]

# one legend table for every operation kind a d₁ block can carry
OP_COLORS: dict[str, str] = {
    format_sum(TAU): "#0000FF",
    format_sum(SQ2): "#FF0000",
    format_sum(SQ2_RHO): "#FF8000",
    format_sum(SQ3SQ1): "#00B000",
    format_sum(SQ2_PR): "#800000",
    format_sum(TAU_PR): "#000080",
    format_sum(DELTA_SQ2SQ1): "#006000",
    format_sum(Q1): "#8000A0",
}
OTHER_COLOR = "#404040"

SLOTS = 4  # sub-rows per weight


def component_text(c: Component) -> str:
    if c.kind == "F2":
        return c.name if c.dim == 1 else f"{c.name}×{c.dim}"
    if c.kind == "group":
        return f"{c.name}:{c.group}" if c.group.ngens == 1 else f"{c.name}:{c.group.orders()}"
    if c.kind == "divisible":
        return c.name
    return f"{c.name}(BS)"


def _component_json(c: Component) -> dict:
    out = {"kind": c.kind, "name": c.name, "offset": c.offset}
    if c.kind == "F2":
        out["dim"] = c.dim
        out["labels"] = list(c.labels)
    elif c.kind == "group":
        out["group"] = str(c.group)
        out["orders"] = list(c.group.orders())
    return out


def _sorted_keys(cells):
    return sorted(cells, key=lambda k: (k[1], k[0]))


def region_to_document(region: PageRegion) -> dict:
    pmin, pmax, qmin, qmax = region.window
    cells = []
    for p, q in _sorted_keys(region.cells):
        g = region.cells[(p, q)]
        if not g.components:
            continue
        cells.append({"p": p, "q": q, "summary": g.summary(), "components": [_component_json(c) for c in g.components]})
    diffs = []
    for p, q in _sorted_keys(region.homs):
        h = region.homs[(p, q)]
        if not h.blocks:
            continue
        blocks = [
            {"src_index": i, "tgt_index": j, "op": op, "matrix": mat.to_rows()}
            for i, j, op, mat in sorted(h.blocks, key=lambda b: (b[0], b[1]))
        ]
        diffs.append({"from": [p, q], "to": [p - 1, q + 1], "blocks": blocks})
    return {
        "spectrum": region.spectrum,
        "field": region.field,
        "page": region.page,
        "window": {"pmin": pmin, "pmax": pmax, "qmin": qmin, "qmax": qmax},
        "notes": list(region.notes),
        "cells": cells,
        "differentials": diffs,
    }


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=1, ensure_ascii=False, sort_keys=False) + "\n"


def _arrows(region: PageRegion):
    """(source cell, source slot, target cell, target slot, op) for every nonzero block."""
    out = []
    for p, q in _sorted_keys(region.homs):
        h = region.homs[(p, q)]
        for i, j, op, _ in sorted(h.blocks, key=lambda b: (b[0], b[1])):
            out.append(((p, q), i, (p - 1, q + 1), j, op))
    return out


# ------------------------------------------------------------------ ASCII

COLW = 16


def _ascii(region: PageRegion) -> str:
    pmin, pmax, qmin, qmax = region.window
    qmin = max(qmin, 0)
    title = f"E^{region.page} {region.spectrum} over {region.field}"
    lines = [title, "=" * len(title)]
    ps = list(range(pmin, pmax + 1))
    for q in range(qmax, qmin - 1, -1):
        for slot in range(SLOTS - 1, -1, -1):
            head = f"q={q:<3}|" if slot == 0 else "     |"
            row = []
            for p in ps:
                g = region.cells.get((p, q))
                text = ""
                if g is not None:
                    comps = g.components
                    if slot < len(comps):
                        text = component_text(comps[slot])
                        if slot == SLOTS - 1 and len(comps) > SLOTS:
                            text = f"+{len(comps) - SLOTS + 1} more"
                row.append(text[: COLW - 1].ljust(COLW))
            lines.append((head + "".join(row)).rstrip())
    lines.append("     +" + "-" * (COLW * len(ps)))
    lines.append("      " + "".join(f"p={p}".ljust(COLW) for p in ps).rstrip())
    arrows = _arrows(region)
    if arrows:
        lines.append("")
        lines.append("d₁ arrows:")
        for src, i, tgt, j, op in arrows:
            lines.append(f"  ({src[0]},{src[1]})[{i}] → ({tgt[0]},{tgt[1]})[{j}]  {op}")
    for note in region.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------------- SVG

CW, CH, MARGIN = 120, 96, 60


def _slot_xy(region, p, q, slot):
    pmin, pmax, qmin, qmax = region.window
    x = MARGIN + (p - pmin) * CW + CW // 2
    y = MARGIN + (qmax - q) * CH + CH - 12 - slot * (CH // SLOTS)
    return x, y


def _svg(region: PageRegion) -> str:
    pmin, pmax, qmin, qmax = region.window
    qmin = max(qmin, 0)
    ncols = max(pmax - pmin + 1, 0)
    nrows = max(qmax - qmin + 1, 0)
    width = 2 * MARGIN + ncols * CW + 200
    height = 2 * MARGIN + nrows * CH
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg version="1.1" xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>{escape(f'E^{region.page} {region.spectrum} over {region.field}')}</title>",
        "<defs>",
    ]
    for color in sorted(set(OP_COLORS.values()) | {OTHER_COLOR}):
        out.append(
            f'<marker id="head{color[1:]}" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto">'
            f'<path d="M0,0 L8,4 L0,8 z" fill="{color}"/></marker>'
        )
    out.append("</defs>")
    # axes
    x0, y0 = MARGIN, MARGIN + nrows * CH
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + ncols * CW}" y2="{y0}" stroke="black"/>')
    out.append(f'<line x1="{x0}" y1="{MARGIN}" x2="{x0}" y2="{y0}" stroke="black"/>')
    for p in range(pmin, pmax + 1):
        x = MARGIN + (p - pmin) * CW + CW // 2
        out.append(f'<text x="{x}" y="{y0 + 20}" text-anchor="middle" font-size="12">{p}</text>')
    for q in range(qmin, qmax + 1):
        y = MARGIN + (qmax - q) * CH + CH - 12
        out.append(f'<text x="{x0 - 10}" y="{y + 4}" text-anchor="end" font-size="12">{q}</text>')
    # arrows first, so dots sit on top
    for src, i, tgt, j, op in _arrows(region):
        color = OP_COLORS.get(op, OTHER_COLOR)
        sx, sy = _slot_xy(region, *src, min(i, SLOTS - 1))
        tx, ty = _slot_xy(region, *tgt, min(j, SLOTS - 1))
        out.append(
            f'<line x1="{sx}" y1="{sy}" x2="{tx}" y2="{ty}" stroke="{color}" stroke-width="1.5" '
            f'marker-end="url(#head{color[1:]})"><title>{escape(op)}</title></line>'
        )
    for p, q in _sorted_keys(region.cells):
        g = region.cells[(p, q)]
        for slot, c in enumerate(g.components[:SLOTS]):
            x, y = _slot_xy(region, p, q, slot)
            r = 4 if c.kind == "group" or c.kind == "divisible" else 2
            fill = "white" if c.kind in ("divisible", "conditional") else "black"
            out.append(f'<circle cx="{x}" cy="{y}" r="{r}" fill="{fill}" stroke="black"/>')
            out.append(f'<text x="{x + 6}" y="{y - 3}" font-size="9">{escape(component_text(c))}</text>')
    # legend
    lx = MARGIN + ncols * CW + 20
    ly = MARGIN
    for k, (op, color) in enumerate(OP_COLORS.items()):
        y = ly + 16 * k
        out.append(f'<line x1="{lx}" y1="{y}" x2="{lx + 24}" y2="{y}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 30}" y="{y + 4}" font-size="11">{escape(op)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_chart(region: PageRegion, fmt: str) -> str:
    if fmt == "ascii":
        return _ascii(region)
    if fmt == "svg":
        return _svg(region)
    if fmt == "json":
        return dump_document(region_to_document(region))
    raise ValueError(f"unknown chart format {fmt!r}")
