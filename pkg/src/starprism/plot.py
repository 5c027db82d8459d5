"""Self-contained SVG line charts of the closed form over a sweep grid."""
from __future__ import annotations

import csv
import io
from collections import defaultdict
from html import escape
from typing import Sequence

from .solver import SweepRecord

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22")

PANEL_W, PANEL_H = 420, 320
MARGIN = dict(left=56, right=86, top=36, bottom=44)


def formula_series(records: Sequence[SweepRecord]) -> dict[str, dict[int, list[tuple[int, int]]]]:
    """parity -> m -> [(n, formula_rn)] sorted by n."""
    out: dict[str, dict[int, list[tuple[int, int]]]] = defaultdict(lambda: defaultdict(list))
    for r in sorted(records, key=lambda r: (r.m, r.n)):
        out[r.parity][r.m].append((r.n, r.formula_rn))
    return {p: dict(series) for p, series in out.items()}


def strictly_increasing_in_n(series: dict[str, dict[int, list[tuple[int, int]]]]) -> bool:
    return all(
        all(a[1] < b[1] for a, b in zip(points, points[1:]))
        for by_m in series.values() for points in by_m.values()
    )


def series_csv(records: Sequence[SweepRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["parity", "m", "n", "formula_rn"])
    series = formula_series(records)
    for parity in ("even", "odd"):
        for m, points in sorted(series.get(parity, {}).items()):
            for n, value in points:
                w.writerow([parity, m, n, value])
    return buf.getvalue()


def _ticks(lo: float, hi: float, count: int = 5) -> list[int]:
    if hi <= lo:
        return [int(lo)]
    step = max(1, round((hi - lo) / count))
    start = int(lo) - int(lo) % step
    return [t for t in range(start, int(hi) + step, step) if lo <= t <= hi]


def _panel(title: str, by_m: dict[int, list[tuple[int, int]]], x0: int) -> list[str]:
    left, top = x0 + MARGIN["left"], MARGIN["top"]
    width = PANEL_W - MARGIN["left"] - MARGIN["right"]
    height = PANEL_H - MARGIN["top"] - MARGIN["bottom"]
    parts = [f'<text x="{x0 + PANEL_W / 2:.1f}" y="20" text-anchor="middle" '
             f'font-size="14">{escape(title)}</text>']
    if not by_m:
        parts.append(f'<text x="{left + width / 2:.1f}" y="{top + height / 2:.1f}" '
                     f'text-anchor="middle" fill="#888">no data</text>')
        return parts

    xs = [n for pts in by_m.values() for n, _ in pts]
    ys = [v for pts in by_m.values() for _, v in pts]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    x_span = (x_hi - x_lo) or 1
    y_span = (y_hi - y_lo) or 1

    def px(n):
        return left + (n - x_lo) / x_span * width

    def py(v):
        return top + height - (v - y_lo) / y_span * height

    parts.append(f'<rect x="{left}" y="{top}" width="{width}" height="{height}" '
                 f'fill="none" stroke="#333" stroke-width="1"/>')
    for t in _ticks(x_lo, x_hi, 6):
        parts.append(f'<line x1="{px(t):.1f}" y1="{top + height}" x2="{px(t):.1f}" '
                     f'y2="{top + height + 4}" stroke="#333"/>')
        parts.append(f'<text x="{px(t):.1f}" y="{top + height + 16}" text-anchor="middle" '
                     f'font-size="11">{t}</text>')
    for t in _ticks(y_lo, y_hi):
        parts.append(f'<line x1="{left - 4}" y1="{py(t):.1f}" x2="{left}" y2="{py(t):.1f}" '
                     f'stroke="#333"/>')
        parts.append(f'<text x="{left - 6}" y="{py(t) + 4:.1f}" text-anchor="end" '
                     f'font-size="11">{t}</text>')
    parts.append(f'<text x="{left + width / 2:.1f}" y="{PANEL_H - 8}" text-anchor="middle" '
                 f'font-size="12">n (star leaves)</text>')
    parts.append(f'<text x="{x0 + 14}" y="{top + height / 2:.1f}" text-anchor="middle" '
                 f'font-size="12" transform="rotate(-90 {x0 + 14} {top + height / 2:.1f})">'
                 f'closed-form rn</text>')

    for i, (m, points) in enumerate(sorted(by_m.items())):
        color = PALETTE[i % len(PALETTE)]
        coords = " ".join(f"{px(n):.1f},{py(v):.1f}" for n, v in points)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                     f'stroke-width="2"/>')
        parts += [f'<circle cx="{px(n):.1f}" cy="{py(v):.1f}" r="3" fill="{color}"/>'
                  for n, v in points]
        ly = top + 12 + 16 * i
        parts.append(f'<line x1="{left + width + 10}" y1="{ly}" x2="{left + width + 28}" '
                     f'y2="{ly}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{left + width + 32}" y="{ly + 4}" font-size="11">m={m}</text>')
    return parts


def render_svg(records: Sequence[SweepRecord]) -> str:
    series = formula_series(records)
    body = _panel("even m", series.get("even", {}), 0)
    body += _panel("odd m", series.get("odd", {}), PANEL_W)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * PANEL_W}" height="{PANEL_H}" '
        f'viewBox="0 0 {2 * PANEL_W} {PANEL_H}" font-family="sans-serif">\n'
        f'<rect width="100%" height="100%" fill="white"/>\n'
        + "\n".join(body) + "\n</svg>\n"
    )
