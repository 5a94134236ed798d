"""SVG rendering of detection output.

One ``<line>`` per detected segment in the image pixel frame (x = col,
y = row), grouped per source path so a viewer can toggle or restyle the
strokes belonging to one skeleton path together.
"""
from __future__ import annotations

import base64

__all__ = ["render_svg", "PALETTE"]

PALETTE = (
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
    "#42d4f4", "#f032e6", "#9a6324", "#469990", "#808000",
)


def _color_for(path_id: int) -> str:
    return PALETTE[path_id % len(PALETTE)]


def render_svg(detection: dict, background_png: bytes | None = None) -> str:
    """Render a detection document (see jsonio) to an SVG string."""
    width = int(detection.get("width", 0))
    height = int(detection.get("height", 0))
    segments = detection.get("segments", [])
    if not width or not height:
        # fall back to segment extent when the document carries no frame
        max_r = max((max(s["p1"][0], s["p2"][0]) for s in segments), default=0)
        max_c = max((max(s["p1"][1], s["p2"][1]) for s in segments), default=0)
        width = width or int(max_c) + 2
        height = height or int(max_r) + 2

    lines: list[str] = []
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    if background_png is not None:
        payload = base64.b64encode(background_png).decode("ascii")
        lines.append(
            f'  <image width="{width}" height="{height}" '
            f'href="data:image/png;base64,{payload}"/>'
        )

    by_path: dict[int, list[dict]] = {}
    for seg in segments:
        by_path.setdefault(int(seg.get("path", -1)), []).append(seg)
    for path_id in sorted(by_path):
        lines.append(
            f'  <g id="path-{path_id}" stroke="{_color_for(path_id)}" '
            f'stroke-width="1" stroke-linecap="round">'
        )
        for seg in by_path[path_id]:
            (r1, c1), (r2, c2) = seg["p1"], seg["p2"]
            lines.append(
                f'    <line x1="{c1}" y1="{r1}" x2="{c2}" y2="{r2}"/>'
            )
        lines.append("  </g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
