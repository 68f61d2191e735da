"""Serializers for :class:`~dlgraph.layout.Scene3D`: TikZ/pgfplots, JSON, OBJ, SVG.

Every writer is a pure function of (scene, options) and produces the same
bytes on every call.  Numbers are printed as the shortest decimal with at
most ``decimal_digits`` fractional digits; "-0" is normalized to "0".
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import BinaryIO

from .graph import DLGraph
from .layout import (
    KIND_DL,
    KIND_TREE_P,
    KIND_TREE_Q,
    KINDS,
    Point3,
    Scene3D,
    brown_position,
    dl_position,
    orange_position,
)

FORMATS = ("tikz", "json", "obj", "svg")

# TikZ styles per segment kind (tree-p, tree-q, dl).
DEFAULT_COLORS = ("Orange!20", "MFCB!20", "DeepSkyBlue4")
# SVG stroke equivalents of the same three styles.
DEFAULT_SVG_COLORS = ("#F5C089", "#B9AF8F", "#00688B")


@dataclass(frozen=True)
class ExportOptions:
    """Rendering options shared by all formats.

    ``view`` of ``None`` falls back to the scene's own view.  ``colors``
    are TikZ style strings; ``svg_colors`` are the stroke values the SVG
    writer uses instead.
    """

    format: str = "tikz"
    view: tuple | None = None
    colors: tuple[str, str, str] = DEFAULT_COLORS
    svg_colors: tuple[str, str, str] = DEFAULT_SVG_COLORS
    axis_labels: bool = True
    decimal_digits: int = 6

    def __post_init__(self) -> None:
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}; expected one of {FORMATS}")
        if self.decimal_digits < 1:
            raise ValueError(f"decimal_digits must be >= 1, got {self.decimal_digits}")


def format_number(value, digits: int = 6) -> str:
    """Shortest decimal with at most ``digits`` fractional digits, trailing zeros trimmed."""
    scale = 10**digits
    scaled = round(Fraction(value) * scale)
    if scaled == 0:
        return "0"
    sign = "-" if scaled < 0 else ""
    whole, rem = divmod(abs(scaled), scale)
    if rem == 0:
        return f"{sign}{whole}"
    frac = str(rem).rjust(digits, "0").rstrip("0")
    return f"{sign}{whole}.{frac}"


def _effective_view(scene: Scene3D, opts: ExportOptions) -> tuple:
    return tuple(opts.view) if opts.view is not None else tuple(scene.view)


def export_tikz(scene: Scene3D, opts: ExportOptions = ExportOptions()) -> str:
    """Standalone LaTeX document with one literal-coordinate ``\\addplot3`` per segment.

    Statements appear in scene order; tree-q statements are each wrapped in
    an "on background layer" scope.  No TikZ-side arithmetic is emitted, so
    the bytes depend only on the scene and options.
    """
    az, el = _effective_view(scene, opts)
    digits = opts.decimal_digits
    style = {KIND_TREE_P: opts.colors[0], KIND_TREE_Q: opts.colors[1], KIND_DL: opts.colors[2]}
    lines = [
        r"\documentclass[border=0mm]{standalone}",
        r"\usepackage[x11names]{xcolor}",
        r"\usepackage{tikz}",
        r"\usetikzlibrary{backgrounds}",
        r"\usepackage{pgfplots}",
        r"\pgfplotsset{compat=1.18}",
        r"\definecolor{MFCB}{cmyk}{0,0.06,0.20,0.6}",
        r"\colorlet{Orange}{DarkOrange3!85}",
        r"\begin{document}",
        r"\begin{tikzpicture}",
        r"  \begin{axis}[",
        f"    view={{{format_number(az, digits)}}}{{{format_number(el, digits)}}},",
    ]
    if opts.axis_labels:
        lines += ["    xlabel=$x$,", "    zlabel=$z$,", "    ylabel=$y$,"]
    lines.append("    ]")
    for seg in scene.segments:
        a = ",".join(format_number(c, digits) for c in seg.a)
        b = ",".join(format_number(c, digits) for c in seg.b)
        stmt = f"\\addplot3[{style[seg.kind]},thick] coordinates {{({a}) ({b})}};"
        if seg.kind == KIND_TREE_Q:
            lines += [r"    \begin{scope}[on background layer]", "      " + stmt, r"    \end{scope}"]
        else:
            lines.append("    " + stmt)
    lines += [r"  \end{axis}", r"\end{tikzpicture}", r"\end{document}"]
    return "\n".join(lines) + "\n"


def _json_number(value):
    frac = Fraction(value)
    return int(frac) if frac.denominator == 1 else float(frac)


def export_json(scene: Scene3D, opts: ExportOptions = ExportOptions()) -> str:
    """One JSON object with the DL vertices/edges plus both tree layers.

    Vertex ids follow the canonical graph enumeration order; tree node ids
    follow (level, index) order within each tree ("level" of a brown node is
    its internal level ``layers - drawn height``).  Tree edges are (parent,
    child) id pairs.
    """
    params = scene.params
    graph = DLGraph(params)
    az, el = _effective_view(scene, opts)

    vertices = []
    for v in graph.vertices():
        pos = dl_position(params, v)
        vertices.append(
            {
                "id": graph.vertex_index(v),
                "h": v.height,
                "orange": v.orange,
                "brown": v.brown,
                "pos": [float(pos.x), float(pos.y), float(pos.z)],
            }
        )
    edges = [
        {"a": graph.vertex_index(a), "b": graph.vertex_index(b), "kind": "dl"}
        for a, b in graph.edges()
    ]

    doc = {
        "params": {"p": params.p, "q": params.q, "layers": params.layers},
        "view": [_json_number(az), _json_number(el)],
        "vertices": vertices,
        "edges": edges,
        "tree_p": _tree_block(params.p, params.layers, orange=True),
        "tree_q": _tree_block(params.q, params.layers, orange=False),
    }
    return json.dumps(doc, indent=2) + "\n"


def _tree_block(b: int, layers: int, orange: bool) -> dict:
    """Nodes and parent->child edges of one tree layer, with drawn positions."""
    offsets = [0]
    for level in range(layers + 1):
        offsets.append(offsets[-1] + b**level)

    def node_id(level: int, index: int) -> int:
        return offsets[level] + index

    nodes = []
    edges = []
    for level in range(layers + 1):
        for index in range(b**level):
            if orange:
                pos = orange_position(b, layers, level, index)
            else:
                pos = brown_position(b, layers, layers - level, index)
            nodes.append(
                {
                    "id": node_id(level, index),
                    "level": level,
                    "index": index,
                    "pos": [float(pos.x), float(pos.y), float(pos.z)],
                }
            )
            if level > 0:
                edges.append({"a": node_id(level - 1, index // b), "b": node_id(level, index)})
    return {"nodes": nodes, "edges": edges}


def export_obj(scene: Scene3D, opts: ExportOptions = ExportOptions()) -> str:
    """Wavefront OBJ: deduplicated ``v`` records, then per-kind ``g`` groups of ``l`` records."""
    digits = opts.decimal_digits
    grouped = {kind: [] for kind in KINDS}
    for seg in scene.segments:
        grouped[seg.kind].append(seg)
    index: dict[Point3, int] = {}
    for kind in KINDS:
        for seg in grouped[kind]:
            for pt in (seg.a, seg.b):
                if pt not in index:
                    index[pt] = len(index) + 1
    lines = [f"v {format_number(p.x, digits)} {format_number(p.y, digits)} {format_number(p.z, digits)}" for p in index]
    for kind in KINDS:
        lines.append(f"g {kind.replace('-', '_')}")
        lines += [f"l {index[seg.a]} {index[seg.b]}" for seg in grouped[kind]]
    return "\n".join(lines) + "\n"


_CARDINAL_SINE = {
    Fraction(0): Fraction(0),
    Fraction(90): Fraction(1),
    Fraction(180): Fraction(0),
    Fraction(270): Fraction(-1),
}


def _sin_deg(angle) -> Fraction:
    rem = Fraction(angle) % 360
    if rem in _CARDINAL_SINE:
        return _CARDINAL_SINE[rem]
    return Fraction(math.sin(math.radians(float(angle))))


def _cos_deg(angle) -> Fraction:
    return _sin_deg(Fraction(angle) + 90)


def project_point(point, azimuth_deg, elevation_deg) -> tuple[Fraction, Fraction]:
    """Orthographic screen coordinates (u, v) of a 3D point.

    u = -sin(az)*x + cos(az)*y and v = cos(el)*z - sin(el)*(cos(az)*x + sin(az)*y),
    evaluated in exact rational arithmetic over float-derived sines, so the
    map is exactly linear; angles that are multiples of 90 degrees use exact
    0/1 values.  This camera is this library's own convention, not a claim
    about any particular plotting toolchain.
    """
    x, y, z = (Fraction(c) for c in point)
    sa, ca = _sin_deg(azimuth_deg), _cos_deg(azimuth_deg)
    se, ce = _sin_deg(elevation_deg), _cos_deg(elevation_deg)
    u = -sa * x + ca * y
    v = ce * z - se * (ca * x + sa * y)
    return u, v


def export_svg(scene: Scene3D, opts: ExportOptions = ExportOptions()) -> str:
    """SVG 1.1 with one line element per segment, drawn back to front: tree-q, tree-p, dl.

    The viewBox is the projected bounding box with a 5% margin (unit box for
    a degenerate single-point scene); screen y points down, so v is negated.
    """
    az, el = _effective_view(scene, opts)
    digits = opts.decimal_digits
    stroke = {KIND_TREE_P: opts.svg_colors[0], KIND_TREE_Q: opts.svg_colors[1], KIND_DL: opts.svg_colors[2]}

    projected: dict[str, list[tuple[Fraction, Fraction, Fraction, Fraction]]] = {kind: [] for kind in KINDS}
    us, vs = [], []
    for seg in scene.segments:
        ua, va = project_point(seg.a, az, el)
        ub, vb = project_point(seg.b, az, el)
        projected[seg.kind].append((ua, va, ub, vb))
        us += [ua, ub]
        vs += [va, vb]
    if not us:
        us = vs = [Fraction(0)]

    umin, umax = min(us), max(us)
    vmin, vmax = min(vs), max(vs)
    width, height = umax - umin, vmax - vmin
    margin_u = width / 20 if width else Fraction(1, 2)
    margin_v = height / 20 if height else Fraction(1, 2)
    box_w = width + 2 * margin_u
    box_h = height + 2 * margin_v
    # screen y grows downward: flip v.
    box = (umin - margin_u, -vmax - margin_v, box_w, box_h)
    stroke_width = max(box_w, box_h) / 400

    fmt = lambda value: format_number(value, digits)  # noqa: E731
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{fmt(box[0])} {fmt(box[1])} {fmt(box[2])} {fmt(box[3])}">',
    ]
    for kind in (KIND_TREE_Q, KIND_TREE_P, KIND_DL):
        lines.append(
            f'  <g fill="none" stroke="{stroke[kind]}" stroke-width="{fmt(stroke_width)}" stroke-linecap="round">'
        )
        for ua, va, ub, vb in projected[kind]:
            lines.append(
                f'    <line x1="{fmt(ua)}" y1="{fmt(-va)}" x2="{fmt(ub)}" y2="{fmt(-vb)}"/>'
            )
        lines.append("  </g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


_RENDERERS = {
    "tikz": export_tikz,
    "json": export_json,
    "obj": export_obj,
    "svg": export_svg,
}


def render(scene: Scene3D, opts: ExportOptions = ExportOptions()) -> str:
    """Serialize ``scene`` in ``opts.format``."""
    return _RENDERERS[opts.format](scene, opts)


def write_scene(scene: Scene3D, opts: ExportOptions, sink: BinaryIO) -> None:
    """Encode the rendered document as UTF-8 into a byte sink."""
    sink.write(render(scene, opts).encode("utf-8"))
