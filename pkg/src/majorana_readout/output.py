"""CSV, JSON and SVG emission.

Floats are written with 17 significant digits so every 64-bit value survives a
write/read cycle; CSV uses ',' separators, '.' decimals and LF line endings.
"""

import csv
import io
import json
import math
from xml.sax.saxutils import escape


def fmt(value):
    """Text form of one cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    try:
        return format(float(value), ".17g")  # numpy scalars
    except (TypeError, ValueError):
        return str(value)


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _cell(text):
    if text == "":
        return None
    try:
        if text.lstrip("-").isdigit():
            return int(text)
        return float(text)
    except ValueError:
        return text


def parse_csv(text):
    """(header, rows) with numeric cells converted back to int/float."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return header, [[_cell(c) for c in row] for row in reader]


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(csv_text(header, rows))


def _json_value(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json_value(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{_json_value(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    x = float(obj)
    if not math.isfinite(x):
        return json.dumps(None)  # JSON has no inf/nan
    return format(x, ".17g")


def json_text(obj, indent=2):
    """JSON with floats at 17 significant digits; non-finite floats become null."""
    return _json_value(obj, indent, 0) + "\n"


def write_json(path, obj):
    with open(path, "w", newline="") as fh:
        fh.write(json_text(obj))


_PALETTE = ["#6a3d9a", "#33a02c", "#e6ab02", "#1f78b4", "#e31a1c", "#666666"]


def svg_line_plot(series, title="", xlabel="", ylabel="", width=480, height=320):
    """Minimal line plot. ``series`` is a list of (label, xs, ys); None/nan break lines."""
    ml, mr, mt, mb = 60, 110, 30, 45
    pts = [
        (x, y)
        for _, xs, ys in series
        for x, y in zip(xs, ys)
        if x is not None and y is not None and math.isfinite(x) and math.isfinite(y)
    ]
    if pts:
        x0, x1 = min(p[0] for p in pts), max(p[0] for p in pts)
        y0, y1 = min(p[1] for p in pts), max(p[1] for p in pts)
    else:
        x0, x1, y0, y1 = 0.0, 1.0, 0.0, 1.0
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pw, ph = width - ml - mr, height - mt - mb

    def sx(x):
        return ml + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return mt + ph - (y - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" font-size="13">{escape(title)}</text>',
        f'<text x="{ml + pw / 2:.1f}" y="{height - 8}" text-anchor="middle" font-size="12">{escape(xlabel)}</text>',
        f'<text x="14" y="{mt + ph / 2:.1f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 14 {mt + ph / 2:.1f})">{escape(ylabel)}</text>',
        f'<text x="{ml}" y="{mt + ph + 15}" font-size="10">{x0:.4g}</text>',
        f'<text x="{ml + pw}" y="{mt + ph + 15}" font-size="10" text-anchor="end">{x1:.4g}</text>',
        f'<text x="{ml - 4}" y="{mt + ph}" font-size="10" text-anchor="end">{y0:.4g}</text>',
        f'<text x="{ml - 4}" y="{mt + 10}" font-size="10" text-anchor="end">{y1:.4g}</text>',
    ]
    for i, (label, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        segments, cur = [], []
        for x, y in zip(xs, ys):
            if x is None or y is None or not (math.isfinite(x) and math.isfinite(y)):
                if cur:
                    segments.append(cur)
                cur = []
                continue
            cur.append(f"{sx(x):.2f},{sy(y):.2f}")
        if cur:
            segments.append(cur)
        for seg in segments:
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{" ".join(seg)}"/>')
        ly = mt + 14 * (i + 1)
        out.append(f'<line x1="{ml + pw + 8}" y1="{ly - 4}" x2="{ml + pw + 24}" y2="{ly - 4}" stroke="{color}"/>')
        out.append(f'<text x="{ml + pw + 28}" y="{ly}" font-size="10">{escape(str(label))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
