"""Matplotlib rendering of the diagnostic figures.

Companion to the delimited artifacts in `report`: the benchmark writes a
PNG next to every sweep/profile/scatter table. Rendering is forced onto
the Agg backend and avoids anything time- or environment-dependent, so
repeated runs produce byte-identical files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .metrics import KSweepReport  # noqa: E402
from .pca import Projection  # noqa: E402
from .report import PALETTE, ProfileTable  # noqa: E402

_RC = {
    "figure.dpi": 110,
    "savefig.dpi": 110,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
    "axes.titlesize": 10,
}


def save_sweep_figure(sweep: KSweepReport, path, title: str | None = None) -> None:
    """Silhouette and SSE against k on twin axes, with best/elbow markers."""
    ks = [row.k for row in sweep.rows]
    with plt.rc_context(_RC):
        fig, ax_sil = plt.subplots(figsize=(6.0, 3.6))
        ax_sse = ax_sil.twinx()
        ax_sse.grid(False)
        l1, = ax_sil.plot(ks, [r.silhouette for r in sweep.rows], marker="o",
                          color=PALETTE[0], label=f"silhouette ({sweep.distance})")
        l2, = ax_sse.plot(ks, [r.sse for r in sweep.rows], marker="s",
                          color=PALETTE[1], label="SSE (L2)")
        handles = [l1, l2]
        v1 = ax_sil.axvline(sweep.best_k, color=PALETTE[2], linestyle="--",
                            label=f"best k = {sweep.best_k}")
        handles.append(v1)
        if sweep.elbow_k is not None:
            v2 = ax_sil.axvline(sweep.elbow_k, color=PALETTE[3], linestyle=":",
                                label=f"elbow k = {sweep.elbow_k}")
            handles.append(v2)
        ax_sil.set_xlabel("k")
        ax_sil.set_ylabel("mean silhouette")
        ax_sse.set_ylabel("SSE")
        ax_sil.set_xticks(ks)
        ax_sil.set_title(title or f"{sweep.method} k-sweep")
        ax_sil.legend(handles=handles, loc="center right", fontsize=8)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)


def save_profile_figure(table: ProfileTable, path, title: str | None = None) -> None:
    """Centroid profile plot: one line per cluster across the features."""
    xs = range(len(table.feature_names))
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.0, 3.6))
        for row in table.rows:
            color = PALETTE[row.cluster % len(PALETTE)]
            ax.plot(xs, row.centroid, marker="o", color=color,
                    label=f"cluster {row.cluster} (n={row.size}, {row.pct:.1f}%)")
        ax.set_xticks(list(xs))
        ax.set_xticklabels(table.feature_names, rotation=30, ha="right")
        ax.set_ylabel("centroid value")
        ax.axhline(0.0, color="#888888", linewidth=0.8)
        ax.set_title(title or "cluster profiles")
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)


def save_scatter_figure(projection: Projection, path, title: str | None = None) -> None:
    """PCA scatter colored by label; 3-D projections as three 2-D panels."""
    panels = [(0, 1)] if projection.m == 2 else [(0, 1), (0, 2), (1, 2)]
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(1, len(panels), figsize=(4.0 * len(panels), 3.8),
                                 squeeze=False)
        labels = projection.labels
        for ax, (dx, dy) in zip(axes[0], panels):
            for lab in sorted(set(int(v) for v in labels)):
                mask = labels == lab
                ax.scatter(projection.coords[mask, dx], projection.coords[mask, dy],
                           s=6, color=PALETTE[lab % len(PALETTE)], alpha=0.6,
                           label=f"cluster {lab}", linewidths=0)
            ax.set_xlabel(f"pc{dx + 1} ({projection.explained_ratio[dx]:.0%})")
            ax.set_ylabel(f"pc{dy + 1} ({projection.explained_ratio[dy]:.0%})")
        axes[0][0].legend(fontsize=8, markerscale=2)
        fig.suptitle(title or "PCA projection", fontsize=10)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
