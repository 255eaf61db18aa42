"""SVG and PNG output for NodeTrix layouts, plus an audit of rendered SVG."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from xml.sax.saxutils import escape
from typing import Dict, List, Tuple

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure
from matplotlib.patches import Circle, Rectangle

from .layout import NodeTrixLayout, Point, audit_geometry

SVG_NS = "http://www.w3.org/2000/svg"
MARGIN = 20.0
EDGE_COLOR = "#33506e"
CELL_COLOR = "#2f6f4f"
GRID_COLOR = "#b8c4cc"


def _fmt(x: float) -> str:
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _cells(layout: NodeTrixLayout, c: str) -> List[Tuple[int, int]]:
    m = layout.matrices[c]
    idx = {v: i for i, v in enumerate(m.order)}
    out = set()
    for u, v in layout.intra.get(c, []):
        i, j = idx[u], idx[v]
        out.add((i, j))
        out.add((j, i))
    return sorted(out)


def render_svg(layout: NodeTrixLayout) -> str:
    """SVG 1.1 document; identical layouts give byte-identical output."""
    x0, y0, x1, y1 = layout.bounds()
    empty = not (layout.matrices or layout.points or layout.routes)
    w = 0.0 if empty else x1 - x0 + 2 * MARGIN
    h = 0.0 if empty else y1 - y0 + 2 * MARGIN

    def tx(p: Point) -> Tuple[str, str]:
        return _fmt(p[0] - x0 + MARGIN), _fmt(y1 - p[1] + MARGIN)

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="{SVG_NS}" version="1.1" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
    ]
    for e in sorted(layout.routes):
        pts = " ".join(",".join(tx(p)) for p in layout.routes[e])
        out.append(
            f'<polyline class="edge" id="e-{escape(e[0])}-{escape(e[1])}" points="{pts}" fill="none" '
            f'stroke="{EDGE_COLOR}" stroke-width="1"/>'
        )
    for c in sorted(layout.matrices):
        m = layout.matrices[c]
        k = len(m.order)
        left, top = tx((m.x, m.y + m.size))
        out.append(f'<g class="matrix" id="m-{escape(c)}">')
        out.append(f"<title>{escape(c)}: {escape(' '.join(m.order))}</title>")
        out.append(
            f'<rect class="frame" x="{left}" y="{top}" width="{_fmt(m.size)}" height="{_fmt(m.size)}" '
            f'fill="white" stroke="black" stroke-width="1"/>'
        )
        for i in range(1, k):
            a = tx((m.x + i * m.cell, m.y))
            b = tx((m.x + i * m.cell, m.y + m.size))
            out.append(f'<line class="grid" x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" stroke="{GRID_COLOR}"/>')
            a = tx((m.x, m.y + i * m.cell))
            b = tx((m.x + m.size, m.y + i * m.cell))
            out.append(f'<line class="grid" x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" stroke="{GRID_COLOR}"/>')
        for i, j in _cells(layout, c):
            # row i from the top, column j from the left
            cx, cy = tx((m.x + j * m.cell, m.y + m.size - i * m.cell))
            out.append(
                f'<rect class="cell" x="{cx}" y="{cy}" width="{_fmt(m.cell)}" height="{_fmt(m.cell)}" '
                f'fill="{CELL_COLOR}"/>'
            )
        out.append("</g>")
    for v in sorted(layout.points):
        cx, cy = tx(layout.points[v])
        out.append(f'<circle class="vertex" id="v-{escape(v)}" cx="{cx}" cy="{cy}" r="3" fill="black"><title>{escape(v)}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path: str, layout: NodeTrixLayout) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(layout))


def audit_svg(text: str) -> List[str]:
    """Re-read polylines and matrix frames from rendered SVG and look for
    edge-edge and edge-matrix conflicts in the written coordinates."""
    root = ET.fromstring(text)
    lines: Dict[str, List[Point]] = {}
    boxes: Dict[str, Tuple[float, float, float, float]] = {}
    for el in root.iter():
        tag = el.tag.split("}")[-1]
        cls = el.get("class")
        if tag == "polyline" and cls == "edge":
            pts = [tuple(float(t) for t in pair.split(",")) for pair in el.get("points", "").split()]
            lines[el.get("id", str(len(lines)))] = pts
        elif tag == "g" and cls == "matrix":
            for r in el:
                if r.tag.split("}")[-1] == "rect" and r.get("class") == "frame":
                    x, y = float(r.get("x")), float(r.get("y"))
                    boxes[el.get("id")] = (x, y, x + float(r.get("width")), y + float(r.get("height")))
    owners = {}
    for key, pts in lines.items():
        owners[key] = [
            c for c, (a, b, cc, d) in boxes.items() for p in (pts[0], pts[-1]) if a <= p[0] <= cc and b <= p[1] <= d
        ]
    return audit_geometry(lines, boxes, owners)


def render_png(layout: NodeTrixLayout, path: str, dpi: int = 150) -> None:
    x0, y0, x1, y1 = layout.bounds()
    w = max(x1 - x0, 1.0) + 2 * MARGIN
    h = max(y1 - y0, 1.0) + 2 * MARGIN
    scale = 8.0 / max(w, h)
    fig = Figure(figsize=(max(w * scale, 1.0), max(h * scale, 1.0)))
    FigureCanvasAgg(fig)
    ax = fig.add_axes([0, 0, 1, 1])
    ax.set_xlim(x0 - MARGIN, x0 - MARGIN + w)
    ax.set_ylim(y0 - MARGIN, y0 - MARGIN + h)
    ax.set_aspect("equal")
    ax.axis("off")
    for e in sorted(layout.routes):
        xs, ys = zip(*layout.routes[e])
        ax.plot(xs, ys, color=EDGE_COLOR, lw=0.8, zorder=1)
    for c in sorted(layout.matrices):
        m = layout.matrices[c]
        ax.add_patch(Rectangle((m.x, m.y), m.size, m.size, facecolor="white", edgecolor="black", lw=0.8, zorder=2))
        for i, j in _cells(layout, c):
            ax.add_patch(
                Rectangle((m.x + j * m.cell, m.y + m.size - (i + 1) * m.cell), m.cell, m.cell, color=CELL_COLOR, zorder=3)
            )
        for i in range(1, len(m.order)):
            ax.plot([m.x + i * m.cell] * 2, [m.y, m.y + m.size], color=GRID_COLOR, lw=0.5, zorder=3)
            ax.plot([m.x, m.x + m.size], [m.y + i * m.cell] * 2, color=GRID_COLOR, lw=0.5, zorder=3)
    for v in sorted(layout.points):
        ax.add_patch(Circle(layout.points[v], 3, color="black", zorder=4))
    fig.savefig(path, dpi=dpi)


__all__ = ["audit_svg", "render_png", "render_svg", "write_svg"]
