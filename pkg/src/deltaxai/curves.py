"""Output-density curves (unconditional vs. one feature pinned) and their SVG plot."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from deltaxai.delta_local import conditional_predictions
from deltaxai.density import fit_kde, pdf_grid
from deltaxai.model import Dataset, Predictor, predict_batch

COLORS = ("#000000", "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2")


@dataclass(frozen=True)
class CurveTable:
    grid: np.ndarray
    unconditional: np.ndarray
    conditional: np.ndarray  # G x M
    feature_names: tuple[str, ...]

    def __post_init__(self):
        g = self.grid.size
        if self.unconditional.shape != (g,) or self.conditional.shape != (g, len(self.feature_names)):
            raise ValueError("curve columns do not match the grid")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if np.any(self.unconditional < 0) or np.any(self.conditional < 0):
            raise ValueError("densities must be nonnegative")


def export_curves(model: Predictor, trainset: Dataset, instance, grid_points: int = 256) -> CurveTable:
    """Single-fit (no bootstrap) KDE curves on a grid covering the unconditional
    outputs plus three bandwidths either side."""
    if grid_points < 16:
        raise ValueError("need at least 16 grid points")
    x = np.asarray(instance, dtype=np.float64)
    y = predict_batch(model, trainset)
    uncond = fit_kde(y)
    pad = 3.0 * uncond.bandwidth
    grid = np.linspace(y.min() - pad, y.max() + pad, grid_points)
    cond = np.column_stack(
        [
            pdf_grid(fit_kde(conditional_predictions(model, trainset, i, x[i])), grid)
            for i in range(trainset.n_features)
        ]
    )
    return CurveTable(grid, pdf_grid(uncond, grid), cond, trainset.feature_names)


def curves_csv(table: CurveTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["y", "unconditional", *table.feature_names])
    for g in range(table.grid.size):
        w.writerow([repr(float(table.grid[g])), repr(float(table.unconditional[g]))]
                   + [repr(float(v)) for v in table.conditional[g]])
    return buf.getvalue()


def _tick(v):
    return f"{v:.4g}"


def render_curves_svg(table: CurveTable, feature_names=None, title="Output density") -> str:
    """Standalone SVG line chart: one polyline per column, axes and legend.

    Output depends only on the table contents, so equal tables give equal bytes.
    """
    names = tuple(feature_names) if feature_names is not None else table.feature_names
    width, height = 800, 480
    left, right, top, bottom = 80, 180, 50, 60
    pw, ph = width - left - right, height - top - bottom

    x0, x1 = float(table.grid[0]), float(table.grid[-1])
    ymax = float(max(table.unconditional.max(), table.conditional.max(initial=0.0)))
    ymax = ymax * 1.1 if ymax > 0 else 1.0

    def px(x):
        return left + (x - x0) / (x1 - x0) * pw

    def py(y):
        return top + ph - y / ymax * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        f'<text x="{left + pw / 2:.1f}" y="28" text-anchor="middle" font-family="sans-serif" '
        f'font-size="16">{escape(title)}</text>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="#000000"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="#000000"/>',
    ]
    for k in range(6):
        xv = x0 + (x1 - x0) * k / 5
        yv = ymax * k / 5
        out.append(f'<line x1="{px(xv):.2f}" y1="{top + ph}" x2="{px(xv):.2f}" y2="{top + ph + 5}" stroke="#000000"/>')
        out.append(f'<text x="{px(xv):.2f}" y="{top + ph + 20}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{_tick(xv)}</text>')
        out.append(f'<text x="{left - 8}" y="{py(yv) + 4:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{_tick(yv)}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 12}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="13">model output y</text>')

    columns = [("unconditional", table.unconditional)] + [
        (f"{name} fixed", table.conditional[:, i]) for i, name in enumerate(names)
    ]
    for c, (label, dens) in enumerate(columns):
        color = COLORS[c % len(COLORS)]
        pts = " ".join(f"{px(float(g)):.2f},{py(float(d)):.2f}" for g, d in zip(table.grid, dens))
        dash = ' stroke-dasharray="6,3"' if c == 0 else ""
        out.append(f'<polyline data-series={quoteattr(label)} fill="none" stroke="{color}" '
                   f'stroke-width="1.5"{dash} points="{pts}"/>')
        ly = top + 16 + 20 * c
        out.append(f'<line x1="{left + pw + 15}" y1="{ly}" x2="{left + pw + 40}" y2="{ly}" stroke="{color}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{left + pw + 46}" y="{ly + 4}" font-family="sans-serif" font-size="12">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
