"""Minimal deterministic SVG charts for the report tables.

Every figure is also emitted as a data table; these charts are deliberately
simple (axes, ticks, bars, points, bands) and are rendered from sorted rows
with fixed number formatting, so identical inputs give identical bytes.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

_WIDTH = 720
_HEIGHT = 420
_MARGIN_L = 170
_MARGIN_R = 30
_MARGIN_T = 44
_MARGIN_B = 48

_AXIS = "#444444"
_BAR_NEG = "#2166ac"
_BAR_POS = "#b2182b"
_POINT = "#333333"
_BAND = "#bbbbbb"
_LINE = "#000000"


def _f(value: float) -> str:
    return f"{value:.2f}"


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    power = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 5, 10):
        step = mult * power
        if raw <= step:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * abs(hi):
        ticks.append(round(t, 12))
        t += step
    return ticks


class _Svg:
    def __init__(self, width: int = _WIDTH, height: int = _HEIGHT):
        self.width = width
        self.height = height
        self.parts: list[str] = []

    def rect(self, x, y, w, h, fill, opacity: Optional[float] = None):
        extra = f' fill-opacity="{_f(opacity)}"' if opacity is not None else ""
        self.parts.append(
            f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(w)}" height="{_f(h)}" fill="{fill}"{extra}/>'
        )

    def line(self, x1, y1, x2, y2, stroke=_AXIS, width=1.0):
        self.parts.append(
            f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
            f'stroke="{stroke}" stroke-width="{_f(width)}"/>'
        )

    def circle(self, cx, cy, r, fill=_POINT):
        self.parts.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r)}" fill="{fill}"/>')

    def polygon(self, points: Sequence[tuple[float, float]], fill=_BAND, opacity=0.5):
        coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in points)
        self.parts.append(
            f'<polygon points="{coords}" fill="{fill}" fill-opacity="{_f(opacity)}"/>'
        )

    def path(self, points: Sequence[tuple[float, float]], stroke=_LINE, width=1.5):
        if not points:
            return
        d = "M " + " L ".join(f"{_f(x)} {_f(y)}" for x, y in points)
        self.parts.append(
            f'<path d="{d}" fill="none" stroke="{stroke}" stroke-width="{_f(width)}"/>'
        )

    def text(self, x, y, content, size=11, anchor="start", fill="#000000"):
        self.parts.append(
            f'<text x="{_f(x)}" y="{_f(y)}" font-size="{size}" font-family="sans-serif" '
            f'text-anchor="{anchor}" fill="{fill}">{_esc(content)}</text>'
        )

    def render(self) -> str:
        body = "\n".join(self.parts)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
            f'<rect width="{self.width}" height="{self.height}" fill="#ffffff"/>\n'
            f"{body}\n</svg>\n"
        )


def _x_scale(lo: float, hi: float):
    span = hi - lo if hi > lo else 1.0
    inner = _WIDTH - _MARGIN_L - _MARGIN_R

    def to_px(v: float) -> float:
        return _MARGIN_L + (v - lo) / span * inner

    return to_px


def hbar_chart(
    title: str,
    rows: Sequence[tuple[str, float]],
    x_label: str,
) -> str:
    """Horizontal bars, negative values to the left of a zero line."""
    svg = _Svg(height=max(_HEIGHT, _MARGIN_T + _MARGIN_B + 18 * max(1, len(rows))))
    values = [v for _, v in rows] or [0.0]
    lo = min(0.0, min(values))
    hi = max(0.0, max(values))
    to_px = _x_scale(lo, hi)
    svg.text(_WIDTH / 2, 20, title, size=13, anchor="middle")
    base_y = _MARGIN_T
    for i, (label, value) in enumerate(rows):
        y = base_y + 18 * i
        x0 = to_px(min(0.0, value))
        x1 = to_px(max(0.0, value))
        svg.rect(x0, y + 3, max(x1 - x0, 0.5), 12, _BAR_NEG if value < 0 else _BAR_POS)
        svg.text(_MARGIN_L - 6, y + 13, label, anchor="end")
    axis_y = base_y + 18 * len(rows) + 8
    svg.line(_MARGIN_L, axis_y, _WIDTH - _MARGIN_R, axis_y)
    for tick in _nice_ticks(lo, hi):
        x = to_px(tick)
        svg.line(x, axis_y, x, axis_y + 4)
        svg.text(x, axis_y + 16, f"{tick:g}", anchor="middle")
    zero_x = to_px(0.0)
    svg.line(zero_x, base_y - 4, zero_x, axis_y, stroke="#888888")
    svg.text((_MARGIN_L + _WIDTH - _MARGIN_R) / 2, axis_y + 32, x_label, anchor="middle")
    svg.height = axis_y + 40
    return svg.render()


def range_chart(
    title: str,
    rows: Sequence[tuple[str, float, float, float]],
    x_label: str,
) -> str:
    """Quantile ranges: a q25-q75 bar with a median tick, one row per label."""
    svg = _Svg(height=max(_HEIGHT, _MARGIN_T + _MARGIN_B + 18 * max(1, len(rows))))
    spans = [v for _, q25, _, q75 in rows for v in (q25, q75)] or [0.0]
    lo = min(0.0, min(spans))
    hi = max(0.0, max(spans))
    to_px = _x_scale(lo, hi)
    svg.text(_WIDTH / 2, 20, title, size=13, anchor="middle")
    base_y = _MARGIN_T
    for i, (label, q25, median, q75) in enumerate(rows):
        y = base_y + 18 * i
        svg.rect(to_px(q25), y + 5, max(to_px(q75) - to_px(q25), 0.5), 8, "#7fa7cc")
        mx = to_px(median)
        svg.line(mx, y + 2, mx, y + 16, stroke="#08306b", width=2.0)
        svg.text(_MARGIN_L - 6, y + 13, label, anchor="end")
    axis_y = base_y + 18 * len(rows) + 8
    svg.line(_MARGIN_L, axis_y, _WIDTH - _MARGIN_R, axis_y)
    for tick in _nice_ticks(lo, hi):
        x = to_px(tick)
        svg.line(x, axis_y, x, axis_y + 4)
        svg.text(x, axis_y + 16, f"{tick:g}", anchor="middle")
    zero_x = to_px(0.0)
    svg.line(zero_x, base_y - 4, zero_x, axis_y, stroke="#888888")
    svg.text((_MARGIN_L + _WIDTH - _MARGIN_R) / 2, axis_y + 32, x_label, anchor="middle")
    svg.height = axis_y + 40
    return svg.render()


def scatter_chart(
    title: str,
    points: Sequence[tuple[float, float]],
    x_label: str,
    y_label: str,
    curve: Optional[Sequence[tuple[float, float, float, float]]] = None,
    log_x: bool = False,
) -> str:
    """Scatter with an optional (x, mean, lower, upper) curve and band."""
    svg = _Svg()

    def tx(v: float) -> float:
        return math.log10(v) if log_x else v

    xs = [tx(x) for x, _ in points if not log_x or x > 0]
    ys = [y for x, y in points if not log_x or x > 0]
    if curve:
        xs += [tx(x) for x, _, _, _ in curve if not log_x or x > 0]
        ys += [v for x, m, lo, hi in curve for v in (m, lo, hi) if not log_x or x > 0]
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys + [0.0]), max(ys + [0.0])
    if x_hi <= x_lo:
        x_hi = x_lo + 1.0
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0
    inner_w = _WIDTH - _MARGIN_L - _MARGIN_R
    inner_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(v: float) -> float:
        return _MARGIN_L + (v - x_lo) / (x_hi - x_lo) * inner_w

    def py(v: float) -> float:
        return _MARGIN_T + (y_hi - v) / (y_hi - y_lo) * inner_h

    svg.text(_WIDTH / 2, 20, title, size=13, anchor="middle")
    svg.line(_MARGIN_L, _HEIGHT - _MARGIN_B, _WIDTH - _MARGIN_R, _HEIGHT - _MARGIN_B)
    svg.line(_MARGIN_L, _MARGIN_T, _MARGIN_L, _HEIGHT - _MARGIN_B)
    for tick in _nice_ticks(x_lo, x_hi):
        x = px(tick)
        svg.line(x, _HEIGHT - _MARGIN_B, x, _HEIGHT - _MARGIN_B + 4)
        label = f"1e{tick:g}" if log_x else f"{tick:g}"
        svg.text(x, _HEIGHT - _MARGIN_B + 16, label, anchor="middle")
    for tick in _nice_ticks(y_lo, y_hi):
        y = py(tick)
        svg.line(_MARGIN_L - 4, y, _MARGIN_L, y)
        svg.text(_MARGIN_L - 8, y + 4, f"{tick:g}", anchor="end")
    zero_y = py(0.0)
    svg.line(_MARGIN_L, zero_y, _WIDTH - _MARGIN_R, zero_y, stroke="#cccccc")

    if curve:
        usable = [(x, m, lo, hi) for x, m, lo, hi in curve if not log_x or x > 0]
        band = [(px(tx(x)), py(hi)) for x, _, _, hi in usable]
        band += [(px(tx(x)), py(lo)) for x, _, lo, _ in reversed(usable)]
        svg.polygon(band)
        svg.path([(px(tx(x)), py(m)) for x, m, _, _ in usable])
    for x, y in points:
        if log_x and x <= 0:
            continue
        svg.circle(px(tx(x)), py(y), 3.0)

    svg.text((_MARGIN_L + _WIDTH - _MARGIN_R) / 2, _HEIGHT - 12, x_label, anchor="middle")
    svg.text(16, _MARGIN_T - 10, y_label)
    return svg.render()
