"""Hand-written SVG polyline charts for sweep output (no dependencies)."""

from __future__ import annotations

from typing import Sequence

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")

_MARGIN_LEFT = 64
_MARGIN_RIGHT = 16
_MARGIN_TOP = 32
_MARGIN_BOTTOM = 48


def polyline_chart(
    series: Sequence[tuple[str, Sequence[tuple[float, float]]]],
    title: str = "",
    x_label: str = "",
    y_label: str = "",
    width: int = 720,
    height: int = 420,
) -> str:
    """Render (label, [(x, y), ...]) series as a single SVG document."""
    points = [p for _, pts in series for p in pts]
    if not points:
        raise ValueError("chart needs at least one data point")
    x_min = min(p[0] for p in points)
    x_max = max(p[0] for p in points)
    y_min = min(p[1] for p in points)
    y_max = max(p[1] for p in points)
    if x_max == x_min:
        x_max = x_min + 1.0
    if y_max == y_min:
        y_max = y_min + 1.0

    plot_w = width - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = height - _MARGIN_TOP - _MARGIN_BOTTOM

    def sx(x: float) -> float:
        return _MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w

    def sy(y: float) -> float:
        return _MARGIN_TOP + (y_max - y) / (y_max - y_min) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    # axes
    x0, y0 = _MARGIN_LEFT, _MARGIN_TOP + plot_h
    out.append(
        f'<line x1="{x0}" y1="{_MARGIN_TOP}" x2="{x0}" y2="{y0}" '
        'stroke="black" stroke-width="1"/>'
    )
    out.append(
        f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" '
        'stroke="black" stroke-width="1"/>'
    )
    # min/max tick labels
    out.append(
        f'<text x="{x0}" y="{y0 + 16}" font-size="11" '
        f'text-anchor="middle">{x_min:.6g}</text>'
    )
    out.append(
        f'<text x="{x0 + plot_w}" y="{y0 + 16}" font-size="11" '
        f'text-anchor="middle">{x_max:.6g}</text>'
    )
    out.append(
        f'<text x="{x0 - 6}" y="{y0 + 4}" font-size="11" '
        f'text-anchor="end">{y_min:.6g}</text>'
    )
    out.append(
        f'<text x="{x0 - 6}" y="{_MARGIN_TOP + 4}" font-size="11" '
        f'text-anchor="end">{y_max:.6g}</text>'
    )
    if title:
        out.append(
            f'<text x="{width / 2:.1f}" y="20" font-size="14" '
            f'text-anchor="middle">{title}</text>'
        )
    if x_label:
        out.append(
            f'<text x="{x0 + plot_w / 2:.1f}" y="{height - 12}" font-size="12" '
            f'text-anchor="middle">{x_label}</text>'
        )
    if y_label:
        out.append(
            f'<text x="14" y="{_MARGIN_TOP + plot_h / 2:.1f}" font-size="12" '
            f'text-anchor="middle" transform="rotate(-90 14 '
            f'{_MARGIN_TOP + plot_h / 2:.1f})">{y_label}</text>'
        )

    for i, (label, pts) in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{coords}"/>'
        )
        out.append(
            f'<text x="{x0 + plot_w - 4}" y="{_MARGIN_TOP + 14 + 14 * i}" '
            f'font-size="11" text-anchor="end" fill="{color}">{label}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"
