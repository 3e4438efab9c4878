"""SVG pictures of virtual Newton polygons.

Coordinates are scaled by a multiple of the common denominator of all
vertices, so the file only ever contains integers and the output is
byte-for-byte reproducible.
"""

from fractions import Fraction
from html import escape
from math import lcm

PIXELS_PER_UNIT = 40
MARGIN = 1


def _fmt(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator).replace("-", "−")
    return f"{q.numerator}/{q.denominator}".replace("-", "−")


def svg_document(element, title=None):
    """Return the SVG text for the virtual vertices of ``element``."""
    pts = element.virtual_vertices()
    # ten grid steps per unit leaves room for sub-unit marks and labels
    scale = 10
    for x, y in pts:
        scale = lcm(scale, 10 * Fraction(x).denominator, 10 * Fraction(y).denominator)
    ipts = [(int(x * scale), int(y * scale)) for x, y in pts]
    xs = [x for x, _ in ipts] + [0]
    ys = [y for _, y in ipts] + [0]
    lo_x, hi_x = min(xs) - MARGIN * scale, max(xs) + MARGIN * scale
    lo_y, hi_y = min(ys) - MARGIN * scale, max(ys) + MARGIN * scale
    width = (hi_x - lo_x) * PIXELS_PER_UNIT // scale
    height = (hi_y - lo_y) * PIXELS_PER_UNIT // scale
    dot = scale // 10

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{lo_x} {-hi_y} {hi_x - lo_x} {hi_y - lo_y}">',
        f"  <title>{escape(title if title is not None else str(element))}</title>",
        '  <g transform="scale(1,-1)">',
        f'    <line class="axis" x1="{lo_x}" y1="0" x2="{hi_x}" y2="0" '
        'stroke="#888" stroke-width="1" vector-effect="non-scaling-stroke"/>',
        f'    <line class="axis" x1="0" y1="{lo_y}" x2="0" y2="{hi_y}" '
        'stroke="#888" stroke-width="1" vector-effect="non-scaling-stroke"/>',
    ]
    if len(ipts) > 1:
        path = " ".join(f"{x},{y}" for x, y in ipts)
        lines.append(
            f'    <polyline class="edges" points="{path}" fill="none" stroke="#1f4e9c" '
            'stroke-width="2" vector-effect="non-scaling-stroke"/>'
        )
    for x, y in ipts:
        lines.append(f'    <circle class="vertex" cx="{x}" cy="{y}" r="{dot}" fill="#c0392b"/>')
    lines.append("  </g>")
    font = scale * 3 // 10
    for (x, y), (qx, qy) in zip(ipts, pts):
        lines.append(
            f'  <text x="{x + dot}" y="{-y - dot}" font-size="{font}" '
            f'font-family="sans-serif">({_fmt(qx)}, {_fmt(qy)})</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(element, path, title=None):
    text = svg_document(element, title)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write SVG to {path}: {exc.strerror}") from None
    return path
