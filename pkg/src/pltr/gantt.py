"""Static SVG Gantt charts for schedules."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .model import Schedule

PALETTE = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
]

CELL = 24
LANE = 28
LEFT = 48
TOP = 24


def _lane_states(busy: list[int], q: int, length: int) -> list[str]:
    """Per-slot state of one processor: busy, idle (kept on) or off."""
    states = ["off"] * length
    for t in busy:
        states[t] = "busy"
    for a, b in zip(busy, busy[1:]):
        if 0 < b - a - 1 <= q:
            for t in range(a + 1, b):
                states[t] = "idle"
    return states


def render_svg(schedule: Schedule, q: int, processors: int | None = None, offset: int = 0) -> str:
    busy = schedule.busy_sets()
    lanes = max([processors or 0, *busy.keys()], default=0)
    length = len(schedule)
    jobs = sorted({job for _, _, job in schedule.placements()})
    colour = {job: PALETTE[i % len(PALETTE)] for i, job in enumerate(jobs)}
    width = LEFT + max(length, 1) * CELL + 16
    height = TOP + max(lanes, 1) * LANE + 32

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="10">',
        "<defs>",
        '<pattern id="powerup" width="4" height="4" patternUnits="userSpaceOnUse" patternTransform="rotate(45)">',
        '<line x1="0" y1="0" x2="0" y2="4" stroke="#222" stroke-width="1.5"/>',
        "</pattern>",
        "</defs>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    for k in range(1, lanes + 1):
        y = TOP + (lanes - k) * LANE  # processor 1 at the bottom
        out.append(f'<text x="4" y="{y + LANE / 2 + 3}">P{k}</text>')
        by_slot = {t: job for t, kk, job in schedule.placements() if kk == k}
        states = _lane_states(busy.get(k, []), q, length)
        for t, state in enumerate(states):
            x = LEFT + t * CELL
            if state == "busy":
                job = by_slot[t]
                out.append(
                    f'<rect class="busy" x="{x}" y="{y + 2}" width="{CELL}" height="{LANE - 4}" '
                    f'fill="{colour[job]}" stroke="#333"><title>{escape(job)} @ {t + offset}</title></rect>'
                )
                out.append(f'<text x="{x + 3}" y="{y + LANE / 2 + 3}" fill="#fff">{escape(job)}</text>')
            elif state == "idle":
                out.append(f'<rect class="idle" x="{x}" y="{y + 2}" width="{CELL}" height="{LANE - 4}" fill="#d9d9d9"/>')
            else:
                out.append(f'<rect class="off" x="{x}" y="{y + 2}" width="{CELL}" height="{LANE - 4}" fill="#f4f4f4"/>')
            if state == "busy" and (t == 0 or states[t - 1] == "off"):
                out.append(
                    f'<rect class="powerup" x="{x}" y="{y + 2}" width="4" height="{LANE - 4}" fill="url(#powerup)"/>'
                )
    axis_y = TOP + max(lanes, 1) * LANE + 14
    for t in range(length):
        out.append(f'<text x="{LEFT + t * CELL + 4}" y="{axis_y}">{t + offset}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
