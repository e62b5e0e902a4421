"""Declarative diagnostic figures rendered to SVG, dumpable as CSV.

A PlotSpec is a grid of panels; each panel is one primary series (line,
stem, or scatter) plus optional overlay lines and an optional ribbon
band. The SVG emitter is deliberately minimal: axes box, min/max tick
labels, one <g> element per series. `dump_csv` writes every plotted
number so figures are always inspectable.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from xml.sax.saxutils import escape

import numpy as np

from .classic import ScalingRegression, log_variance_est, rescaled_range_est
from .errors import ShapeError
from .moments import autocorrelation, periodogram

__all__ = [
    "PanelKind",
    "Panel",
    "PlotSpec",
    "acf_plot",
    "periodogram_plot",
    "log_variance_plot",
    "rescaled_range_plot",
    "lm_plot",
    "forecast_plot",
    "render_svg",
    "dump_csv",
]


class PanelKind(Enum):
    LINE = "line"
    STEM = "stem"
    SCATTER = "scatter"
    LOGSCATTER = "logscatter"


@dataclass(frozen=True)
class Panel:
    kind: PanelKind
    x: np.ndarray
    y: np.ndarray
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""
    # overlays: list of (x, y, label) polylines drawn on the same axes
    overlays: tuple = ()
    # band: optional (lower, upper) ribbon sharing the panel's x
    band: tuple | None = None

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.shape != y.shape or x.ndim != 1:
            raise ShapeError(f"panel arrays must be equal-length 1-d, got {x.shape}, {y.shape}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)


@dataclass(frozen=True)
class PlotSpec:
    panels: tuple
    ncols: int = 2
    title: str = ""


def _values(x) -> np.ndarray:
    return np.asarray(getattr(x, "values", x), dtype=float)


def _label(x, default: str) -> str:
    return getattr(x, "label", None) or default


def acf_plot(x, K: int = 50) -> PlotSpec:
    acf = autocorrelation(x, K)
    panel = Panel(PanelKind.STEM, acf.lags.astype(float), acf.values,
                  title=f"ACF: {_label(x, 'series')}", xlabel="lag", ylabel="autocorrelation")
    return PlotSpec((panel,), ncols=1, title="Autocorrelation")


def periodogram_plot(x) -> PlotSpec:
    pg = periodogram(x)
    keep = pg.ordinates > 0
    panel = Panel(PanelKind.LOGSCATTER, np.log(pg.frequencies[keep]), np.log(pg.ordinates[keep]),
                  title=f"Log-periodogram: {_label(x, 'series')}",
                  xlabel="log frequency", ylabel="log I")
    return PlotSpec((panel,), ncols=1, title="Periodogram")


def _scaling_panel(reg: ScalingRegression, title: str, slopes: bool,
                   reference_slope: float | None) -> Panel:
    overlays = []
    if slopes:
        fit = reg.intercept + reg.slope * reg.log_sizes
        overlays.append((reg.log_sizes, fit, f"fit (slope {reg.slope:.3f})"))
        if reference_slope is not None:
            anchor = reg.intercept + reg.slope * reg.log_sizes[0]
            ref = anchor + reference_slope * (reg.log_sizes - reg.log_sizes[0])
            overlays.append((reg.log_sizes, ref, f"reference (slope {reference_slope:g})"))
    return Panel(PanelKind.LOGSCATTER, reg.log_sizes, reg.log_stats, title=title,
                 xlabel="log size", ylabel="log statistic", overlays=tuple(overlays))


def log_variance_plot(x, m: int = 100, slopes: bool = True) -> PlotSpec:
    reg = log_variance_est(x, m)
    panel = _scaling_panel(reg, f"Log-variance (implied d = {reg.implied_d:.3f})",
                           slopes, reference_slope=-1.0)
    return PlotSpec((panel,), ncols=1, title="Log-variance scaling")


def rescaled_range_plot(x, k: int = 100, slopes: bool = True) -> PlotSpec:
    reg = rescaled_range_est(x, k)
    panel = _scaling_panel(reg, f"R/S (implied d = {reg.implied_d:.3f})",
                           slopes, reference_slope=0.5)
    return PlotSpec((panel,), ncols=1, title="Rescaled range scaling")


def lm_plot(x, K: int = 50, m: int = 100) -> PlotSpec:
    """Four-panel long-memory diagnostic: series, ACF, log-periodogram,
    log-variance."""
    z = _values(x)
    series_panel = Panel(PanelKind.LINE, np.arange(len(z), dtype=float), z,
                         title=_label(x, "series"), xlabel="t", ylabel="x")
    acf_panel = acf_plot(x, K=min(K, len(z) - 1)).panels[0]
    pg_panel = periodogram_plot(x).panels[0]
    lv_panel = log_variance_plot(x, m=min(m, len(z) // 2)).panels[0]
    return PlotSpec((series_panel, acf_panel, pg_panel, lv_panel), ncols=2,
                    title="Long-memory diagnostics")


def forecast_plot(x, fc) -> PlotSpec:
    z = _values(x)
    T = len(z)
    hist = Panel(PanelKind.LINE, np.arange(T, dtype=float), z,
                 title="Forecast", xlabel="t", ylabel="x",
                 overlays=((np.arange(T, T + fc.horizon, dtype=float), fc.point, "forecast"),),
                 band=(fc.lower, fc.upper))
    return PlotSpec((hist,), ncols=1, title="Forecast")


# ---------------------------------------------------------------- rendering

_PANEL_W, _PANEL_H = 360, 260
_MARGIN = 45


def _mapper(vals_x, vals_y, ox, oy):
    x0, x1 = float(np.min(vals_x)), float(np.max(vals_x))
    y0, y1 = float(np.min(vals_y)), float(np.max(vals_y))
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    w = _PANEL_W - 2 * _MARGIN
    h = _PANEL_H - 2 * _MARGIN

    def to_px(xs, ys):
        px = ox + _MARGIN + (np.asarray(xs) - x0) / (x1 - x0) * w
        py = oy + _PANEL_H - _MARGIN - (np.asarray(ys) - y0) / (y1 - y0) * h
        return px, py

    return to_px, (x0, x1, y0, y1)


def _poly_points(px, py) -> str:
    return " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))


def _render_panel(panel: Panel, ox: float, oy: float) -> list[str]:
    all_x = [panel.x] + [np.asarray(o[0], dtype=float) for o in panel.overlays]
    all_y = [panel.y] + [np.asarray(o[1], dtype=float) for o in panel.overlays]
    if panel.band is not None:
        bx = np.asarray(panel.overlays[0][0], dtype=float) if panel.overlays else panel.x
        all_x.append(bx)
        all_y.extend([np.asarray(panel.band[0], dtype=float),
                      np.asarray(panel.band[1], dtype=float)])
    to_px, (x0, x1, y0, y1) = _mapper(np.concatenate(all_x), np.concatenate(all_y), ox, oy)

    parts = [f'<g class="panel" transform="translate(0,0)">']
    parts.append(
        f'<rect x="{ox + _MARGIN}" y="{oy + _MARGIN}" width="{_PANEL_W - 2 * _MARGIN}" '
        f'height="{_PANEL_H - 2 * _MARGIN}" fill="none" stroke="black"/>'
    )
    if panel.title:
        parts.append(
            f'<text x="{ox + _PANEL_W / 2}" y="{oy + _MARGIN - 8}" text-anchor="middle" '
            f'font-size="12">{escape(panel.title)}</text>'
        )
    for lab, px, py, anchor in (
        (panel.xlabel, ox + _PANEL_W / 2, oy + _PANEL_H - 8, "middle"),
        (f"[{x0:.3g}, {x1:.3g}] x [{y0:.3g}, {y1:.3g}]", ox + _PANEL_W / 2,
         oy + _PANEL_H - 22, "middle"),
    ):
        if lab:
            parts.append(
                f'<text x="{px}" y="{py}" text-anchor="{anchor}" font-size="9">'
                f"{escape(lab)}</text>"
            )

    if panel.band is not None:
        bx = np.asarray(panel.overlays[0][0], dtype=float) if panel.overlays else panel.x
        lx, ly = to_px(bx, np.asarray(panel.band[0], dtype=float))
        ux, uy = to_px(bx[::-1], np.asarray(panel.band[1], dtype=float)[::-1])
        ribbon = _poly_points(np.concatenate([lx, ux]), np.concatenate([ly, uy]))
        parts.append(f'<g class="band"><polygon points="{ribbon}" fill="lightsteelblue" '
                     f'fill-opacity="0.5" stroke="none"/></g>')

    px, py = to_px(panel.x, panel.y)
    if panel.kind == PanelKind.LINE:
        parts.append(f'<g class="series"><polyline points="{_poly_points(px, py)}" '
                     f'fill="none" stroke="steelblue"/></g>')
    elif panel.kind == PanelKind.STEM:
        _, base = to_px(panel.x, np.zeros_like(panel.y) if y0 <= 0 <= y1
                        else np.full_like(panel.y, y0))
        stems = "".join(
            f'<line x1="{a:.2f}" y1="{b:.2f}" x2="{a:.2f}" y2="{c:.2f}" stroke="steelblue"/>'
            for a, b, c in zip(px, base, py)
        )
        parts.append(f'<g class="series">{stems}</g>')
    else:  # SCATTER / LOGSCATTER
        dots = "".join(f'<circle cx="{a:.2f}" cy="{b:.2f}" r="2" fill="steelblue"/>'
                       for a, b in zip(px, py))
        parts.append(f'<g class="series">{dots}</g>')

    for ol_x, ol_y, ol_label in panel.overlays:
        qx, qy = to_px(np.asarray(ol_x, dtype=float), np.asarray(ol_y, dtype=float))
        parts.append(
            f'<g class="overlay" data-label="{escape(str(ol_label))}">'
            f'<polyline points="{_poly_points(qx, qy)}" fill="none" stroke="firebrick"/></g>'
        )
    parts.append("</g>")
    return parts


def render_svg(spec: PlotSpec, path) -> None:
    """Write the figure as a standalone SVG file."""
    n = len(spec.panels)
    ncols = max(1, min(spec.ncols, n))
    nrows = -(-n // ncols)
    width, height = ncols * _PANEL_W, nrows * _PANEL_H + 24
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="{width / 2}" y="16" text-anchor="middle" font-size="14">'
        f"{escape(spec.title)}</text>",
    ]
    for i, panel in enumerate(spec.panels):
        ox = (i % ncols) * _PANEL_W
        oy = 24 + (i // ncols) * _PANEL_H
        parts.extend(_render_panel(panel, ox, oy))
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts))


def dump_csv(spec: PlotSpec, path) -> None:
    """Write every plotted number: one row per point, tagged by panel and
    series (primary, overlay label, band_lower/band_upper)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["panel", "series", "x", "y"])
        for i, panel in enumerate(spec.panels):
            for a, b in zip(panel.x, panel.y):
                writer.writerow([i, "primary", repr(float(a)), repr(float(b))])
            for ol_x, ol_y, ol_label in panel.overlays:
                for a, b in zip(ol_x, ol_y):
                    writer.writerow([i, str(ol_label), repr(float(a)), repr(float(b))])
            if panel.band is not None:
                bx = panel.overlays[0][0] if panel.overlays else panel.x
                for name, arr in (("band_lower", panel.band[0]), ("band_upper", panel.band[1])):
                    for a, b in zip(bx, arr):
                        writer.writerow([i, name, repr(float(a)), repr(float(b))])
