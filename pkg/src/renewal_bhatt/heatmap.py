"""SVG heatmaps of sweep metrics: one panel per theta, gamma rows by tau columns."""
from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

from .errors import ConfigError

METRICS = ("y", "z", "b_star")
CELL = 28
PAD = 56
GAP = 40
LEGEND_H = 14

_NEG = (33, 102, 172)
_MID = (247, 247, 247)
_POS = (178, 24, 43)


def diverging_color(value: float, vmax: float = 1.0) -> str:
    """Blue-white-red colour for ``value`` clamped to ``[-vmax, vmax]``."""
    s = max(-1.0, min(1.0, value / vmax))
    end = _POS if s > 0 else _NEG
    a = abs(s)
    rgb = tuple(round(m + (e - m) * a) for m, e in zip(_MID, end))
    return "#%02x%02x%02x" % rgb


def _metric(result, metric: str):
    value = getattr(result, metric)
    if value is None or not math.isfinite(value):
        return None
    return value


def _grid(results):
    nt = 1 + max(r.i_t for r in results)
    nth = 1 + max(r.i_theta for r in results)
    ng = 1 + max(r.i_gamma for r in results)
    table = {}
    for r in results:
        key = (r.i_t, r.i_theta, r.i_gamma)
        if key in table:
            raise ConfigError(f"duplicate cell {key}")
        table[key] = r
    if len(table) != nt * nth * ng:
        raise ConfigError("results do not cover a full rectangular grid")
    return table, nt, nth, ng


def render_heatmap(results, metric: str = "y", vmax: float = 1.0) -> str:
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")
    if not results:
        raise ConfigError("no results to plot")
    if not vmax > 0:
        raise ConfigError("vmax must be positive")
    table, nt, nth, ng = _grid(results)
    panel_w = nt * CELL
    panel_h = ng * CELL
    width = PAD + nth * panel_w + (nth - 1) * GAP + PAD // 2
    height = PAD + panel_h + PAD + LEGEND_H + 30
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" font-family="sans-serif" font-size="10">',
        '<defs><pattern id="hatch" patternUnits="userSpaceOnUse" width="6" height="6">'
        '<rect width="6" height="6" fill="#ffffff"/>'
        '<path d="M0,6 L6,0" stroke="#888888" stroke-width="1"/></pattern>'
        '<linearGradient id="legend-gradient" x1="0" x2="1" y1="0" y2="0">'
        f'<stop offset="0" stop-color="{diverging_color(-1, 1)}"/>'
        f'<stop offset="0.5" stop-color="{diverging_color(0, 1)}"/>'
        f'<stop offset="1" stop-color="{diverging_color(1, 1)}"/>'
        '</linearGradient></defs>',
    ]
    for j in range(nth):
        x0 = PAD + j * (panel_w + GAP)
        y0 = PAD
        theta = table[(0, j, 0)].theta
        out.append(f'<g class="panel" data-theta="{theta!r}">')
        out.append(f'<text class="title" x="{x0 + panel_w / 2}" y="{y0 - 18}" '
                   f'text-anchor="middle">θ = {theta:.4g}</text>')
        for i in range(nt):
            for l in range(ng):
                r = table[(i, j, l)]
                value = _metric(r, metric)
                # gamma ascends upwards
                cx = x0 + i * CELL
                cy = y0 + (ng - 1 - l) * CELL
                fill = "url(#hatch)" if value is None else diverging_color(value, vmax)
                label = "missing" if value is None else repr(value)
                out.append(
                    f'<rect class="cell" x="{cx}" y="{cy}" width="{CELL}" height="{CELL}" '
                    f'fill="{fill}" data-i-t="{i}" data-i-gamma="{l}" data-value="{label}">'
                    f'<title>tau={r.tau:.3f} gamma={r.gamma:.3f} {metric}={escape(label)}</title></rect>')
        for l in range(ng):
            gamma = table[(0, j, l)].gamma
            out.append(f'<text x="{x0 - 4}" y="{y0 + (ng - 1 - l) * CELL + CELL / 2 + 3}" '
                       f'text-anchor="end">{gamma:.3g}</text>')
        for i in range(nt):
            tau = table[(i, j, 0)].tau
            out.append(f'<text x="{x0 + i * CELL + CELL / 2}" y="{y0 + panel_h + 12}" '
                       f'text-anchor="middle" font-size="8">{tau:.2f}</text>')
        out.append(f'<text x="{x0 + panel_w / 2}" y="{y0 + panel_h + 26}" '
                   f'text-anchor="middle">τ = ln(T/α₂)</text>')
        out.append(f'<text x="{x0 - 30}" y="{y0 + panel_h / 2}" text-anchor="middle" '
                   f'transform="rotate(-90 {x0 - 30} {y0 + panel_h / 2})">γ</text>')
        out.append('</g>')
    ly = PAD + panel_h + PAD
    lw = min(240, width - 2 * PAD)
    out.append(f'<g class="legend"><rect x="{PAD}" y="{ly}" width="{lw}" height="{LEGEND_H}" '
               'fill="url(#legend-gradient)" stroke="#444444"/>')
    for frac, text in ((0.0, f"{-vmax:g}"), (0.5, "0"), (1.0, f"{vmax:g}")):
        out.append(f'<text x="{PAD + frac * lw}" y="{ly + LEGEND_H + 12}" '
                   f'text-anchor="middle">{text}</text>')
    out.append(f'<text x="{PAD + lw + 8}" y="{ly + LEGEND_H - 2}">{metric}</text></g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"


def emit_heatmap(results, metric: str, destination, vmax: float = 1.0) -> None:
    svg = render_heatmap(results, metric, vmax)
    path = Path(destination)
    try:
        path.write_text(svg, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write heatmap to {path}: {exc}") from exc
