"""Deterministic ASCII and SVG views of patterns and folded states.

The SVG emitter builds plain strings with integer pixel coordinates, so
renders are byte-for-byte reproducible for a given input and flags.
"""

from __future__ import annotations

from .fold_engine import FoldedState
from .pattern import MVPattern, PartialMVPattern

RULER_WIDTH = 72
SVG_WIDTH = 760
SVG_MARGIN = 20
LAYER_STEP = 18
BAR_HEIGHT = 6


def _columns(values, lo: int, span: int, width: int) -> list[int]:
    if span == 0:
        return [0 for _ in values]
    return [(v - lo) * (width - 1) // span for v in values]


def render_ruler(p: MVPattern | PartialMVPattern, width: int = RULER_WIDTH) -> str:
    """Crease pattern as a ruler: tick per crease, labeled M/V/?."""
    positions = p.pattern.positions
    labels = p.mv.labels
    lo, hi = positions[0], positions[-1]
    cols = _columns(positions, lo, hi - lo, width)

    bar = ["-"] * width
    bar[cols[0]] = "|"
    bar[cols[-1]] = "|"
    for i, lab in enumerate(labels):
        bar[cols[i + 1]] = lab

    header = [" "] * width
    cursor = -1
    for col, value in zip(cols, positions):
        text = str(value)
        if col > cursor and col + len(text) <= width:
            header[col : col + len(text)] = text
            cursor = col + len(text)
    return "".join(header).rstrip() + "\n" + "".join(bar) + "\n"


def render_folded_ascii(state: FoldedState, width: int = RULER_WIDTH) -> str:
    """Folded layer stack, one text row per level, top layer first."""
    lo = min(iv.lo for iv in state.intervals)
    hi = max(iv.hi for iv in state.intervals)
    span = hi - lo
    depth = max(iv.level for iv in state.intervals)
    rows = []
    label_width = len(str(depth))
    for level in range(depth, -1, -1):
        row = [" "] * width
        for iv in state.intervals:
            if iv.level != level:
                continue
            a = (iv.lo - lo) * (width - 1) // span if span else 0
            b = (iv.hi - lo) * (width - 1) // span if span else 0
            for col in range(a, b + 1):
                row[col] = "="
            row[a] = row[b] = "#"
        rows.append(f"{level:>{label_width}} " + "".join(row).rstrip())
    rows.append(f"{' ' * label_width} {lo}..{hi}")
    return "\n".join(rows) + "\n"


def render_pattern_svg(p: MVPattern | PartialMVPattern) -> str:
    """Ruler view as SVG: baseline plus one tick per crease."""
    positions = p.pattern.positions
    labels = p.mv.labels
    lo, hi = positions[0], positions[-1]
    span = hi - lo
    inner = SVG_WIDTH - 2 * SVG_MARGIN
    y = 60
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" '
        f'height="100" viewBox="0 0 {SVG_WIDTH} 100">',
        f'<line x1="{SVG_MARGIN}" y1="{y}" x2="{SVG_WIDTH - SVG_MARGIN}" '
        f'y2="{y}" stroke="black" stroke-width="2"/>',
    ]
    for i, lab in enumerate(labels):
        x = SVG_MARGIN + (positions[i + 1] - lo) * inner // span
        color = {"M": "crimson", "V": "royalblue"}.get(lab, "gray")
        parts.append(
            f'<line x1="{x}" y1="{y - 12}" x2="{x}" y2="{y + 12}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{x}" y="{y - 16}" font-size="11" '
            f'text-anchor="middle">{lab}</text>'
        )
    for value, anchor in ((lo, "start"), (hi, "end")):
        x = SVG_MARGIN + (value - lo) * inner // span
        parts.append(
            f'<text x="{x}" y="{y + 28}" font-size="11" '
            f'text-anchor="{anchor}">{value}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_folded_svg(state: FoldedState) -> str:
    """Folded stack as SVG: one bar per layer, arcs joining layers at folds."""
    lo = min(iv.lo for iv in state.intervals)
    hi = max(iv.hi for iv in state.intervals)
    span = hi - lo
    depth = max(iv.level for iv in state.intervals)
    inner = SVG_WIDTH - 2 * SVG_MARGIN

    def x_of(v: int) -> int:
        return SVG_MARGIN + ((v - lo) * inner // span if span else 0)

    def y_of(level: int) -> int:
        return SVG_MARGIN + (depth - level) * LAYER_STEP

    height = 2 * SVG_MARGIN + depth * LAYER_STEP + BAR_HEIGHT + 20
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" '
        f'height="{height}" viewBox="0 0 {SVG_WIDTH} {height}">'
    ]
    for t, iv in enumerate(state.intervals):
        y = y_of(iv.level)
        parts.append(
            f'<line x1="{x_of(iv.lo)}" y1="{y}" x2="{x_of(iv.hi)}" y2="{y}" '
            f'stroke="black" stroke-width="{BAR_HEIGHT}" stroke-linecap="butt"/>'
        )
    for ci, q in enumerate(state.crease_points):
        a = state.intervals[ci]
        b = state.intervals[ci + 1]
        x = x_of(q)
        y1 = y_of(a.level)
        y2 = y_of(b.level)
        if y1 == y2:
            continue
        # bulge away from the paper: folds open toward the side with no layer
        other = a.hi if a.lo == q else a.lo
        sweep = 1 if (other < q) == (y1 < y2) else 0
        r = abs(y2 - y1) // 2
        parts.append(
            f'<path d="M {x} {y1} A {r} {r} 0 0 {sweep} {x} {y2}" '
            f'fill="none" stroke="black" stroke-width="2"/>'
        )
    parts.append(f'<text x="{SVG_MARGIN}" y="{height - 6}" font-size="11">'
                 f"{lo}..{hi}, {len(state.intervals)} layers</text>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
