"""Matplotlib figures for verification reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib import patches  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .density import Certificate, HypothesisReport, Instance  # noqa: E402
from .geometry import Kind  # noqa: E402


def _patch(inst: Instance, i: int, **kwargs):
    (cx, cy), r = inst.red[i].center, inst.red[i].ratio
    if inst.body.kind is Kind.EUCLIDEAN:
        return patches.Circle((cx, cy), r, **kwargs)
    if inst.body.kind is Kind.LINF:
        return patches.Rectangle((cx - r, cy - r), 2 * r, 2 * r, **kwargs)
    verts = np.asarray(inst.body.vertices) * r + np.array([cx, cy])
    return patches.Polygon(verts, closed=True, **kwargs)


def plot_instance(ax, inst: Instance, selected=()):
    chosen = set(selected)
    for i in range(len(inst.red)):
        if i in chosen:
            ax.add_patch(_patch(inst, i, facecolor="#9ecae1", alpha=0.45, edgecolor="#08519c", lw=1.2))
        else:
            ax.add_patch(_patch(inst, i, fill=False, edgecolor="0.6", lw=0.8))
    red = inst.red_points
    ax.scatter(red[:, 0], red[:, 1], s=18, facecolors="white", edgecolors="#cb181d", zorder=3, label="red")
    if inst.blue:
        blue = inst.blue_points
        ax.scatter(blue[:, 0], blue[:, 1], s=14, color="#2171b5", zorder=4, label="blue")
    ax.set_aspect("equal")
    ax.autoscale_view()
    ax.legend(loc="upper right", fontsize=7, frameon=False)


def plot_counts(ax, inst: Instance, report: HypothesisReport):
    rows = np.array([(r, b) for r, b, _ in report.per_member], dtype=float)
    ok = np.array([s for _, _, s in report.per_member])
    jitter = np.random.default_rng(0).uniform(-0.12, 0.12, size=len(rows))
    ax.scatter(rows[ok, 0] + jitter[ok], rows[ok, 1], s=10, color="0.3", label="satisfied")
    if (~ok).any():
        ax.scatter(rows[~ok, 0] + jitter[~ok], rows[~ok, 1], s=14, marker="x", color="#cb181d", label="violated")
    top = max(rows[:, 0].max(), 1.0)
    ax.plot([0, top], [0, inst.lam * top], ls="--", color="#08519c", lw=1, label=rf"blue = {inst.lam:g} red")
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.yaxis.set_major_locator(MaxNLocator(integer=True))
    ax.set_xlabel("red points in member")
    ax.set_ylabel("blue points in member")
    ax.legend(fontsize=7, frameon=False)


def save_report_figure(path, inst: Instance, report: HypothesisReport, cert: Certificate | None = None):
    """Write a figure with the instance (planar only) and the per-member counts."""
    planar = inst.dim == 2
    fig, axes = plt.subplots(1, 2 if planar else 1, figsize=(9 if planar else 4.5, 4.2))
    axes = np.atleast_1d(axes)
    if planar:
        plot_instance(axes[0], inst, cert.selected_indices if cert else ())
        axes[0].set_title("instance and greedy cover", fontsize=9)
    plot_counts(axes[-1], inst, report)
    title = f"|B|/|R| = {len(inst.blue)}/{len(inst.red)}"
    if cert is not None:
        title += f",  bound lam/M = {inst.lam:g}/{cert.depth_bound}"
    axes[-1].set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
