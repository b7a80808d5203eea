"""Static SVG 1.1 frames of a schedule: one file per step."""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .geometry import Rect, trace_polygon, translate
from .model import Instance, Schedule

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
SCALE = 40


def _bounds(inst: Instance, frames: list[list[Rect]]) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    rects = [r for f in frames for r in f] + list(inst.goals)
    if inst.box is not None:
        rects.append(inst.box)
    lo_x = min(r.left for r in rects) - 1
    hi_x = max(r.right for r in rects) + 1
    lo_y = min(r.bottom for r in rects) - 1
    hi_y = max(r.top for r in rects) + 1
    return lo_x, hi_x, lo_y, hi_y


def positions(inst: Instance, sched: Schedule) -> list[list[Rect]]:
    """Robot rectangles before each step, then the final placement."""
    cur = list(inst.starts)
    out = [list(cur)]
    for step in sched.steps:
        for m in step:
            cur[m.robot] = translate(cur[m.robot], m.displacement)
        out.append(list(cur))
    return out


def frame_svg(inst: Instance, before: list[Rect], step, view) -> str:
    lo_x, hi_x, lo_y, hi_y = view

    def px(x) -> float:
        return float((x - lo_x) * SCALE)

    def py(y) -> float:
        return float((hi_y - y) * SCALE)

    def rect(r: Rect, **attrs) -> str:
        extra = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        return (f'<rect x="{px(r.left):.2f}" y="{py(r.top):.2f}" width="{float(r.w * SCALE):.2f}" '
                f'height="{float(r.h * SCALE):.2f}" {extra}/>')

    width, height = float((hi_x - lo_x) * SCALE), float((hi_y - lo_y) * SCALE)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">',
        f'<rect x="0" y="0" width="{width:.2f}" height="{height:.2f}" fill="white"/>',
    ]
    if inst.box is not None:
        parts.append(rect(inst.box, fill="none", stroke="black", stroke_width=2))
    for i, g in enumerate(inst.goals):
        parts.append(rect(g, fill="none", stroke=PALETTE[i % len(PALETTE)], stroke_dasharray="4 3"))
    for m in step:
        poly = trace_polygon(before[m.robot], m.displacement)
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in poly.vertices)
        parts.append(f'<polygon points="{pts}" fill="{PALETTE[m.robot % len(PALETTE)]}" fill-opacity="0.2" stroke="none"/>')
    for i, r in enumerate(before):
        c = PALETTE[i % len(PALETTE)]
        parts.append(rect(r, fill=c, fill_opacity="0.7", stroke="black"))
        parts.append(f'<text x="{px(r.cx):.2f}" y="{py(r.cy):.2f}" font-size="12" text-anchor="middle" '
                     f'dominant-baseline="middle">{i}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_schedule(inst: Instance, sched: Schedule, out_dir) -> list[Path]:
    """Write ``step_NNN.svg`` for each step (and one frame for an empty schedule)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    frames = positions(inst, sched)
    view = _bounds(inst, frames)
    steps = list(sched.steps) or [()]
    paths = []
    for n, step in enumerate(steps):
        path = out / f"step_{n:03d}.svg"
        path.write_text(frame_svg(inst, frames[n], step, view))
        paths.append(path)
    return paths
