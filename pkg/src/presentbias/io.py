"""Deterministic JSON, CSV and SVG writers."""

from __future__ import annotations

import json
import math
from xml.sax.saxutils import escape

import numpy as np


def _encode(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x) or math.isinf(x):
            raise ValueError(f"cannot encode non-finite float {x!r} as JSON")
        s = format(x, ".17g")
        if not any(c in s for c in ".en"):
            s += ".0"
        return s
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ", ".join(f"{json.dumps(k)}: {_encode(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    """JSON with sorted keys and every float printed to 17 significant digits."""
    return _encode(obj) + "\n"


def csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf")


def svg_lines(series, title: str = "", xlabel: str = "", ylabel: str = "") -> str:
    """Line plot with one ``<polyline>`` per series.

    ``series`` is a list of ``(label, xs, ys)``.  Fixed 800x600 viewBox with
    linear axes; the axis extremes are written as text.
    """
    width, height = 800, 600
    left, right, top, bottom = 80, 30, 40, 60
    xs_all = [float(x) for _, xs, _ in series for x in xs]
    ys_all = [float(y) for _, _, ys in series for y in ys]
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = min(ys_all), max(ys_all)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def px(x):
        return left + (x - x0) / (x1 - x0) * (width - left - right)

    def py(y):
        return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{height - bottom}" x2="{width - right}" y2="{height - bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{height - bottom}" stroke="black"/>',
        f'<text x="{left}" y="{height - bottom + 20}" font-size="12">{x0:.6g}</text>',
        f'<text x="{width - right}" y="{height - bottom + 20}" font-size="12" text-anchor="end">{x1:.6g}</text>',
        f'<text x="{left - 8}" y="{height - bottom}" font-size="12" text-anchor="end">{y0:.6g}</text>',
        f'<text x="{left - 8}" y="{top + 4}" font-size="12" text-anchor="end">{y1:.6g}</text>',
    ]
    if title:
        out.append(f'<text x="{width / 2}" y="{top - 15}" font-size="16" text-anchor="middle">{escape(title)}</text>')
    if xlabel:
        out.append(f'<text x="{width / 2}" y="{height - 15}" font-size="13" text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        out.append(f'<text x="20" y="{height / 2}" font-size="13" transform="rotate(-90 20 {height / 2})" '
                   f'text-anchor="middle">{escape(ylabel)}</text>')
    for i, (label, xs, ys) in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join(f"{px(float(x)):.2f},{py(float(y)):.2f}" for x, y in zip(xs, ys))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{pts}"/>')
        out.append(f'<text x="{width - right - 10}" y="{top + 18 * (i + 1)}" font-size="12" '
                   f'text-anchor="end" fill="{color}">{escape(str(label))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
