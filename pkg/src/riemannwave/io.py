"""CSV tables and minimal SVG line plots.

Floats are written with 17 significant digits so every value survives a
round trip through text. A table may end with one footer line
``# {json}`` holding summary statistics.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Optional, Sequence, TextIO, Tuple

import numpy as np

from .errors import ArgumentError

__all__ = ["format_value", "write_csv", "read_csv", "render_svg", "emit_svg"]


def format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    return str(v)


def _json_safe(v):
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence],
              footer: Optional[dict] = None) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    if footer is not None:
        payload = {k: _json_safe(v) for k, v in footer.items()}
        stream.write("# " + json.dumps(payload, sort_keys=True) + "\n")


def read_csv(text: str) -> Tuple[list, list, Optional[dict]]:
    """Parse a table written by :func:`write_csv`; numeric cells become floats."""
    body, footer = [], None
    for line in text.splitlines():
        if line.startswith("# "):
            footer = json.loads(line[2:])
        elif line:
            body.append(line)
    reader = csv.reader(io.StringIO("\n".join(body)))
    header = next(reader)
    rows = []
    for raw in reader:
        row = []
        for cell in raw:
            try:
                row.append(float(cell))
            except ValueError:
                row.append(cell)
        rows.append(row)
    return header, rows, footer


def _ticks(lo, hi):
    return [lo, 0.5 * (lo + hi), hi]


def render_svg(points: Sequence[Tuple[float, float]], width: int = 640, height: int = 400,
               title: str = "", xlabel: str = "", ylabel: str = "") -> str:
    """Standalone SVG with axes and a single polyline through ``points``.

    The viewport is fitted to the data. Output depends only on the input,
    so identical data give identical bytes.
    """
    pts = np.asarray(list(points), dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 2 or pts.shape[1] != 2:
        raise ArgumentError("an SVG plot needs at least two (x, y) points")
    if not np.all(np.isfinite(pts)):
        raise ArgumentError("SVG points must be finite")
    margin = 60
    x0, x1 = float(pts[:, 0].min()), float(pts[:, 0].max())
    y0, y1 = float(pts[:, 1].min()), float(pts[:, 1].max())
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    sx = (width - 2 * margin) / (x1 - x0)
    sy = (height - 2 * margin) / (y1 - y0)

    def px(x):
        return margin + (x - x0) * sx

    def py(y):
        return height - margin - (y - y0) * sy

    coords = " ".join("%.3f,%.3f" % (px(x), py(y)) for x, y in pts)
    left, right = margin, width - margin
    top, bottom = margin, height - margin
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{left}" y2="{top}" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        parts.append(f'<text x="{px(t):.3f}" y="{bottom + 18}" font-size="11" '
                     f'text-anchor="middle">{t:.4g}</text>')
    for t in _ticks(y0, y1):
        parts.append(f'<text x="{left - 6}" y="{py(t) + 4:.3f}" font-size="11" '
                     f'text-anchor="end">{t:.4g}</text>')
    if title:
        parts.append(f'<text x="{width / 2}" y="{top - 20}" font-size="14" '
                     f'text-anchor="middle">{_escape(title)}</text>')
    if xlabel:
        parts.append(f'<text x="{width / 2}" y="{height - 12}" font-size="12" '
                     f'text-anchor="middle">{_escape(xlabel)}</text>')
    if ylabel:
        parts.append(f'<text x="14" y="{height / 2}" font-size="12" text-anchor="middle" '
                     f'transform="rotate(-90 14 {height / 2})">{_escape(ylabel)}</text>')
    parts.append(f'<polyline fill="none" stroke="steelblue" stroke-width="1" points="{coords}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def emit_svg(points: Sequence[Tuple[float, float]], path, **labels) -> None:
    """Write :func:`render_svg` output to ``path``; I/O failures raise ``OSError``."""
    text = render_svg(points, **labels)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
