"""Minimal dependency-free SVG line charts for comparison output."""

from __future__ import annotations

import math

__all__ = ["write_line_chart"]

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
_W, _H = 640, 440
_ML, _MR, _MT, _MB = 70, 20, 20, 50


def _ticks(lo: float, hi: float, log: bool) -> list[float]:
    if log:
        lo_e = math.floor(math.log10(lo))
        hi_e = math.ceil(math.log10(hi))
        return [10.0**e for e in range(lo_e, hi_e + 1)]
    step = 10 ** math.floor(math.log10(hi - lo)) if hi > lo else 1.0
    t, out = math.ceil(lo / step) * step, []
    while t <= hi + 1e-12:
        out.append(t)
        t += step
    return out


def write_line_chart(
    path,
    series: dict[str, list[tuple[float, float]]],
    xlabel: str,
    ylabel: str,
    logx: bool = True,
    logy: bool = True,
) -> None:
    """Write one polyline per series with circles at the data points."""
    xs = [x for pts in series.values() for x, _ in pts]
    ys = [y for pts in series.values() for _, y in pts]
    if not xs:
        raise ValueError("no data points to plot")
    fx = (lambda v: math.log10(v)) if logx else (lambda v: v)
    fy = (lambda v: math.log10(v)) if logy else (lambda v: v)
    x0, x1 = min(map(fx, xs)), max(map(fx, xs))
    y0, y1 = min(map(fy, ys)), max(map(fy, ys))
    x1 = x1 if x1 > x0 else x0 + 1.0
    y1 = y1 if y1 > y0 else y0 + 1.0

    def px(v):
        return _ML + (fx(v) - x0) / (x1 - x0) * (_W - _ML - _MR)

    def py(v):
        return _H - _MB - (fy(v) - y0) / (y1 - y0) * (_H - _MT - _MB)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'font-family="sans-serif" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_ML}" y1="{_H-_MB}" x2="{_W-_MR}" y2="{_H-_MB}" stroke="black"/>',
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H-_MB}" stroke="black"/>',
        f'<text x="{(_ML+_W-_MR)/2}" y="{_H-12}" text-anchor="middle">{xlabel}</text>',
        f'<text x="16" y="{(_MT+_H-_MB)/2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(_MT+_H-_MB)/2})">{ylabel}</text>',
    ]
    for t in _ticks(min(xs), max(xs), logx):
        if min(xs) <= t <= max(xs) or logx:
            x = px(t)
            if _ML - 1 <= x <= _W - _MR + 1:
                parts.append(f'<line x1="{x:.1f}" y1="{_H-_MB}" x2="{x:.1f}" y2="{_H-_MB+5}" stroke="black"/>')
                parts.append(f'<text x="{x:.1f}" y="{_H-_MB+18}" text-anchor="middle">{t:g}</text>')
    for t in _ticks(min(ys), max(ys), logy):
        y = py(t)
        if _MT - 1 <= y <= _H - _MB + 1:
            parts.append(f'<line x1="{_ML-5}" y1="{y:.1f}" x2="{_ML}" y2="{y:.1f}" stroke="black"/>')
            parts.append(f'<text x="{_ML-8}" y="{y+4:.1f}" text-anchor="end">{t:g}</text>')
    for i, (name, pts) in enumerate(series.items()):
        color = _COLORS[i % len(_COLORS)]
        pts = sorted(pts)
        coords = " ".join(f"{px(x):.1f},{py(y):.1f}" for x, y in pts)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        for x, y in pts:
            parts.append(f'<circle cx="{px(x):.1f}" cy="{py(y):.1f}" r="3" fill="{color}"/>')
        parts.append(
            f'<text x="{_W-_MR-6}" y="{_MT+14+16*i}" text-anchor="end" fill="{color}">{name}</text>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
