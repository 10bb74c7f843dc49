"""Minimal static SVG rendering of a barcode: one horizontal segment per
bar, rows grouped by dimension, infinite bars drawn to the right edge."""
from __future__ import annotations

import math

from .persistence import Barcode

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b")


def barcode_svg(b: Barcode, width: int = 640, row_height: int = 14) -> str:
    bars = list(b.bars)
    if not bars:
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="20">'
            "<text x='4' y='14' font-size='10'>empty barcode</text></svg>"
        )
    finite = [iv.birth for _, iv in bars] + [
        iv.death for _, iv in bars if iv.death != math.inf
    ]
    lo, hi = min(finite), max(finite)
    span = hi - lo if hi > lo else 1.0
    pad = 0.05 * span
    lo, hi = lo - pad, hi + pad
    margin = 60

    def x(t: float) -> float:
        if t == math.inf:
            return width - 2
        return margin + (t - lo) / (hi - lo) * (width - margin - 10)

    height = row_height * (len(bars) + 1)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">'
    ]
    row = 0
    for dim in sorted({d for d, _ in bars}):
        first_row_y = row_height * (row + 1)
        out.append(f'<text x="4" y="{first_row_y + 4}" font-size="10">H{dim}</text>')
        color = _COLORS[dim % len(_COLORS)]
        for d, iv in bars:
            if d != dim:
                continue
            y = row_height * (row + 1)
            out.append(
                f'<line x1="{x(iv.birth):.2f}" y1="{y}" x2="{x(iv.death):.2f}" '
                f'y2="{y}" stroke="{color}" stroke-width="4"/>'
            )
            row += 1
    out.append("</svg>")
    return "\n".join(out)
