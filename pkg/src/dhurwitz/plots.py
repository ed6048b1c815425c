"""Static SVG scatter plots of large-genus root tables.

The renderer works entirely from the decimal strings in a
:class:`~dhurwitz.roots.LargegTable`: each string is parsed back into a
``Fraction``, mapped to pixel coordinates in exact arithmetic, and only
formatted to fixed precision at the very end.  Identical tables therefore
produce byte-identical SVG on every platform, independent of float
behaviour or thread count.
"""

from __future__ import annotations

from fractions import Fraction

from .roots import LargegTable

__all__ = ["render_roots_svg"]

_WIDTH = 640
_PAD_LEFT = 64
_PAD_RIGHT = 24
_ROW_STEP = 22
_TOP = 34
_BOTTOM = 30


def _fmt(x: Fraction) -> str:
    """Fixed two-decimal rendering of an exact coordinate."""
    n = round(x * 100)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 100}.{n % 100:02d}"


def render_roots_svg(table: LargegTable) -> str:
    """Standalone SVG scatter of ``table``: one series per genus row,
    markers at each root location, dashed vertical guides at the limit
    positions.  With ``digits == 0`` only the axis and guides are drawn."""
    gs = sorted(table.rows)
    limits = [Fraction(s) for s in table.limits]
    points = {
        g: [Fraction(s) for s in row] for g, row in table.rows.items()
    }
    xs = list(limits)
    if table.digits > 0:
        for row in points.values():
            xs.extend(row)
    x_min, x_max = min(xs), max(xs)
    if x_min == x_max:
        x_min, x_max = x_min - 1, x_max + 1
    span = x_max - x_min
    inner = _WIDTH - _PAD_LEFT - _PAD_RIGHT

    def px(x: Fraction) -> Fraction:
        return _PAD_LEFT + (x - x_min) * inner / span

    height = _TOP + max(len(gs), 1) * _ROW_STEP + _BOTTOM
    axis_y = height - _BOTTOM

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_WIDTH} {height}"'
        ' font-family="monospace" font-size="11">',
        f'<title>real roots by genus, parts {"+".join(str(m) for m in table.mu)},'
        f" {table.digits} digits</title>",
        f'<line x1="{_PAD_LEFT}" y1="{axis_y}" x2="{_WIDTH - _PAD_RIGHT}"'
        f' y2="{axis_y}" stroke="black" stroke-width="1"/>',
    ]
    for lim, label in zip(limits, table.limits):
        x = _fmt(px(lim))
        out.append(
            f'<line x1="{x}" y1="{_TOP - 10}" x2="{x}" y2="{axis_y}"'
            ' stroke="#999" stroke-width="0.5" stroke-dasharray="3,3"/>'
        )
        out.append(
            f'<text x="{x}" y="{axis_y + 16}" text-anchor="middle">{label}</text>'
        )
    if table.digits > 0:
        for i, g in enumerate(gs):
            cy = _TOP + i * _ROW_STEP
            out.append(f'<g id="genus-{g}">')
            out.append(
                f'<text x="{_PAD_LEFT - 10}" y="{cy + 4}" text-anchor="end">g={g}</text>'
            )
            for x in points[g]:
                out.append(
                    f'<circle cx="{_fmt(px(x))}" cy="{cy}" r="3"'
                    ' fill="none" stroke="black" stroke-width="1"/>'
                )
            out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
