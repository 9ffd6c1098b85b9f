"""Figure rendering for the report paths.

Figures are written next to the delimited output: a heatmap (or stem
chart, for folded mode) of the error-term table, and the error terms of a
prime sweep against the square-root envelope.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .gauss import GaussWitness
from .point_counter import NTable


def plot_n_table(tbl: NTable, path: str) -> str:
    """Render the N table: full heatmap when available, folded stems otherwise."""
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    q = tbl.q
    if tbl.full_n is not None:
        lim = max(1, int(np.abs(tbl.full_n).max()))
        im = ax.imshow(tbl.full_n, cmap="RdBu_r", vmin=-lim, vmax=lim, origin="lower")
        fig.colorbar(im, ax=ax, label="N(i, j)")
        ax.set_xlabel("j")
        ax.set_ylabel("i")
        ax.set_title(f"error terms over F_{q}")
    else:
        rows = tbl.folded_rows()
        vals = [r[3] for r in rows]
        labels = [f"({r[0]},{r[1]})" for r in rows]
        ax.stem(range(len(vals)), vals)
        ax.axhline(0.0, color="gray", lw=0.8)
        ax.set_xticks(range(len(vals)), labels, rotation=60, fontsize=8)
        ax.set_xlabel("coset representative (i, j)")
        ax.set_ylabel("N")
        ax.set_title(f"folded error terms over F_{q}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_gauss_sweep(witnesses: list[GaussWitness], path: str) -> str:
    """Error term u per prime against the +-2*sqrt(p) envelope."""
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    ps = np.array([w.p for w in witnesses], dtype=float)
    us = np.array([w.u if w.u is not None else 0 for w in witnesses], dtype=float)
    split = np.array([w.branch == "split" for w in witnesses])
    grid = np.linspace(ps.min(), ps.max(), 256) if len(ps) else np.array([3.0, 5.0])
    ax.fill_between(grid, -2 * np.sqrt(grid), 2 * np.sqrt(grid),
                    color="lightsteelblue", alpha=0.5, label=r"$\pm 2\sqrt{p}$")
    if split.any():
        ax.scatter(ps[split], us[split], s=14, color="crimson", label="u (split)")
    if (~split).any():
        ax.scatter(ps[~split], us[~split], s=10, color="gray", marker="x", label="u = 0 (inert)")
    ax.set_xlabel("p")
    ax.set_ylabel("u")
    ax.set_title("cubic Fermat error term")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
