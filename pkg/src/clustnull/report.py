"""Dependency-free emission of tables and plots.

JSON and CSV artifacts are schema-exact; SVG plots are hand-assembled so
that every emitted byte is a pure function of the inputs (reruns are
byte-identical and the documents are parseable for verification). Floats
serialize with their shortest round-trip decimal representation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .kmeans import ClusteringResult
from .metrics import KSweepReport, StabilityReport
from .pca import Projection

# Fill colors assigned to labels by index (wraps past ten classes).
PALETTE = (
    "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3",
    "#937860", "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd",
)


@dataclass
class ProfileRow:
    cluster: int
    size: int
    pct: float
    centroid: list[float]


@dataclass
class ProfileTable:
    rows: list[ProfileRow]
    feature_names: list[str]
    n: int


def _fnum(value) -> str:
    return repr(float(value))


def sweep_payload(sweep: KSweepReport) -> dict:
    return {
        "method": sweep.method,
        "distance": sweep.distance,
        "best_k": sweep.best_k,
        "elbow_k": sweep.elbow_k,
        "rows": [
            {
                "k": row.k,
                "silhouette": row.silhouette,
                "sse": row.sse,
                "stability_mean": row.stability_mean,
                "stability_sd": row.stability_sd,
            }
            for row in sweep.rows
        ],
    }


def emit_sweep(sweep: KSweepReport, fmt: str = "json") -> bytes:
    """Serialize a k-sweep as schema-exact JSON/CSV or a two-panel SVG."""
    if not sweep.rows:
        raise InvalidArgumentError("cannot emit an empty sweep")
    if fmt == "json":
        return (json.dumps(sweep_payload(sweep), indent=2) + "\n").encode("utf-8")
    if fmt == "csv":
        lines = ["k,silhouette,sse,stability_mean,stability_sd"]
        for row in sweep.rows:
            cells = [
                str(row.k),
                _fnum(row.silhouette),
                _fnum(row.sse),
                "" if row.stability_mean is None else _fnum(row.stability_mean),
                "" if row.stability_sd is None else _fnum(row.stability_sd),
            ]
            lines.append(",".join(cells))
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "svg":
        return _sweep_svg(sweep)
    raise InvalidArgumentError(f"unknown sweep format '{fmt}'")


def stability_payload(report: StabilityReport, method: str) -> dict:
    return {
        "method": method,
        "k": report.k,
        "runs": report.runs,
        "mean": report.mean,
        "sd": report.sd,
        "min": report.min,
        "ari_values": report.ari_values,
    }


def emit_stability(report: StabilityReport, method: str) -> bytes:
    return (json.dumps(stability_payload(report, method), indent=2) + "\n").encode("utf-8")


def emit_profile(result: ClusteringResult, feature_names: list[str]) -> ProfileTable:
    """Per-cluster size/percentage/centroid table, sorted by cluster id.

    Centroid values are reported in the fit's working units (standardized
    features for classical fits, unit-sphere components for spherical).
    """
    labels = result.partition.labels
    k = result.partition.k
    n = labels.shape[0]
    counts = np.bincount(labels, minlength=k)
    rows = [
        ProfileRow(
            cluster=c,
            size=int(counts[c]),
            pct=100.0 * counts[c] / n,
            centroid=[float(v) for v in result.model.centroids[c]],
        )
        for c in range(k)
    ]
    return ProfileTable(rows=rows, feature_names=list(feature_names), n=n)


def profile_csv(table: ProfileTable) -> bytes:
    lines = ["cluster,size,pct," + ",".join(table.feature_names)]
    for row in table.rows:
        cells = [str(row.cluster), str(row.size), _fnum(row.pct)]
        cells.extend(_fnum(v) for v in row.centroid)
        lines.append(",".join(cells))
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit_scatter(projection: Projection, fmt: str = "csv") -> bytes:
    """Projected coordinates with labels, as CSV or an SVG scatter.

    3-D projections render as three pairwise 2-D panels in SVG.
    """
    m = projection.m
    if m not in (2, 3):
        raise InvalidArgumentError(f"scatter wants 2 or 3 dims, got {m}")
    if fmt == "csv":
        header = ["pc1", "pc2", "pc3"][:m] + ["label"]
        lines = [",".join(header)]
        for i in range(projection.coords.shape[0]):
            cells = [_fnum(v) for v in projection.coords[i]]
            cells.append(str(int(projection.labels[i])))
            lines.append(",".join(cells))
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "svg":
        return _scatter_svg(projection)
    raise InvalidArgumentError(f"unknown scatter format '{fmt}'")


# ---------------------------------------------------------------------------
# SVG assembly
# ---------------------------------------------------------------------------

_SVG_FONT = 'font-family="Helvetica,Arial,sans-serif" font-size="11"'


def _axis_scale(lo: float, hi: float, pix_lo: float, pix_hi: float):
    span = hi - lo
    if span <= 0.0:
        span = 1.0
    scale = (pix_hi - pix_lo) / span
    return lambda v: pix_lo + (v - lo) * scale


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _sweep_panel(parts: list[str], xs, ys, x_of, top: float, height: float,
                 label: str, css: str, marker_lines: list[tuple[int, str]]):
    lo, hi = min(ys), max(ys)
    pad = 0.05 * (hi - lo if hi > lo else max(abs(hi), 1.0))
    y_of = _axis_scale(lo - pad, hi + pad, top + height, top)  # inverted axis
    parts.append(f'<rect x="50" y="{top:.2f}" width="420" height="{height:.2f}" '
                 'fill="none" stroke="#444444" stroke-width="1"/>')
    for ty in _ticks(lo - pad, hi + pad):
        py = y_of(ty)
        parts.append(f'<line x1="46" y1="{py:.2f}" x2="50" y2="{py:.2f}" stroke="#444444"/>')
        parts.append(f'<text x="42" y="{py + 3.5:.2f}" text-anchor="end" {_SVG_FONT}>{ty:.3g}</text>')
    for kx, line_css in marker_lines:
        px = x_of(kx)
        parts.append(f'<line class="{line_css}" x1="{px:.2f}" y1="{top:.2f}" '
                     f'x2="{px:.2f}" y2="{top + height:.2f}" '
                     'stroke="#999999" stroke-dasharray="4 3"/>')
    points = " ".join(f"{x_of(x):.2f},{y_of(y):.2f}" for x, y in zip(xs, ys))
    parts.append(f'<polyline points="{points}" fill="none" stroke="{PALETTE[0]}" stroke-width="1.5"/>')
    for x, y in zip(xs, ys):
        parts.append(f'<circle class="marker {css}" cx="{x_of(x):.2f}" cy="{y_of(y):.2f}" '
                     f'r="3" fill="{PALETTE[0]}"/>')
    parts.append(f'<text x="56" y="{top + 14:.2f}" {_SVG_FONT}>{label}</text>')


def _sweep_svg(sweep: KSweepReport) -> bytes:
    ks = [row.k for row in sweep.rows]
    sils = [row.silhouette for row in sweep.rows]
    sses = [row.sse for row in sweep.rows]
    width, height = 500, 400
    x_of = _axis_scale(min(ks), max(ks), 60, 460)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="250" y="16" text-anchor="middle" {_SVG_FONT}>'
        f'{sweep.method} sweep ({sweep.distance} silhouette)</text>',
    ]
    markers = [(sweep.best_k, "marker-best-k")]
    if sweep.elbow_k is not None:
        markers.append((sweep.elbow_k, "marker-elbow-k"))
    _sweep_panel(parts, ks, sils, x_of, 30.0, 155.0, "silhouette", "marker-silhouette", markers)
    _sweep_panel(parts, ks, sses, x_of, 205.0, 155.0, "sse", "marker-sse", markers)
    for k in ks:
        px = x_of(k)
        parts.append(f'<line x1="{px:.2f}" y1="360" x2="{px:.2f}" y2="364" stroke="#444444"/>')
        parts.append(f'<text x="{px:.2f}" y="378" text-anchor="middle" {_SVG_FONT}>{k}</text>')
    parts.append(f'<text x="250" y="394" text-anchor="middle" {_SVG_FONT}>k</text>')
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def _scatter_panel(parts: list[str], coords: np.ndarray, labels: np.ndarray,
                   dim_x: int, dim_y: int, origin_x: float, origin_y: float, side: float):
    xs = coords[:, dim_x]
    ys = coords[:, dim_y]
    x_of = _axis_scale(float(xs.min()), float(xs.max()), origin_x + 6, origin_x + side - 6)
    y_of = _axis_scale(float(ys.min()), float(ys.max()), origin_y + side - 6, origin_y + 6)
    parts.append(f'<rect x="{origin_x:.2f}" y="{origin_y:.2f}" width="{side:.2f}" '
                 f'height="{side:.2f}" fill="none" stroke="#444444" stroke-width="1"/>')
    parts.append(f'<text x="{origin_x + side / 2:.2f}" y="{origin_y + side + 14:.2f}" '
                 f'text-anchor="middle" {_SVG_FONT}>pc{dim_x + 1} vs pc{dim_y + 1}</text>')
    for i in range(coords.shape[0]):
        lab = int(labels[i])
        color = PALETTE[lab % len(PALETTE)]
        parts.append(f'<circle class="pt label-{lab}" cx="{x_of(float(xs[i])):.2f}" '
                     f'cy="{y_of(float(ys[i])):.2f}" r="2" fill="{color}" fill-opacity="0.7"/>')


def _scatter_svg(projection: Projection) -> bytes:
    coords = projection.coords
    labels = projection.labels
    panels = [(0, 1)] if projection.m == 2 else [(0, 1), (0, 2), (1, 2)]
    side = 300.0
    width = int(len(panels) * (side + 30) + 10)
    height = int(side + 50)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for idx, (dx, dy) in enumerate(panels):
        _scatter_panel(parts, coords, labels, dx, dy, 20 + idx * (side + 30), 20.0, side)
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
