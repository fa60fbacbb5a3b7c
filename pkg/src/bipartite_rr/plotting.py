"""Figure rendering for the CLI report paths.

Sweeps and ratio runs save a PNG next to their CSV so a run leaves a
readable artifact without a second command; the emitted standalone plot
scripts cover re-plotting edited or merged CSVs.
"""

from __future__ import annotations

from typing import Dict, List, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def sweep_figure(rows: List[Dict]) -> "plt.Figure":
    """One panel per domain size: quality loss against the budget, one
    line per mechanism. Falls back to q_global when q_loss is absent."""
    sizes = sorted({row["N"] for row in rows})
    mechanisms = sorted({row["mechanism"] for row in rows})
    fig, axes = plt.subplots(1, len(sizes), figsize=(4 * len(sizes), 3.2),
                             sharey=True, squeeze=False)
    metric = "q_loss" if all(row.get("q_loss") is not None for row in rows) else "q_global"
    for ax, n in zip(axes[0], sizes):
        for mech in mechanisms:
            pts = sorted(((r["epsilon"], r[metric]) for r in rows
                          if r["N"] == n and r["mechanism"] == mech))
            if pts:
                ax.plot([p[0] for p in pts], [p[1] for p in pts],
                        marker="o", markersize=3, label=mech)
        ax.set_title(f"N = {n}")
        ax.set_xlabel("epsilon")
        ax.grid(True, alpha=0.3)
    axes[0][0].set_ylabel(metric)
    axes[0][0].legend()
    fig.tight_layout()
    return fig


def ratio_figure(rows: List[Dict]) -> "plt.Figure":
    """Computed global-error ratio against domain size, with the
    asymptote of each budget dashed in the same color."""
    budgets = sorted({row["epsilon"] for row in rows})
    fig, ax = plt.subplots(figsize=(5.5, 3.8))
    for eps in budgets:
        pts = sorted((r["N"], r["ratio"], r["asymptote"]) for r in rows if r["epsilon"] == eps)
        ns = [p[0] for p in pts]
        line, = ax.plot(ns, [p[1] for p in pts], marker="o", markersize=3,
                        label=f"eps = {eps:g}")
        ax.plot(ns, [p[2] for p in pts], linestyle="--", color=line.get_color(), alpha=0.7)
    ax.set_xlabel("N")
    ax.set_ylabel("Q_g ratio to GRR")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return fig


def save_figure(fig: "plt.Figure", path) -> None:
    fig.savefig(path, dpi=150)
    plt.close(fig)
