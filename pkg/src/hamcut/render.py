"""Plot planar instances, partitions and cuts; figures save to SVG."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .cuts import CutResult
from .geometry import ColoredInstance
from .partition import PartitionResult

_COLORS = plt.rcParams["axes.prop_cycle"].by_key()["color"]


def render_figure(
    inst: ColoredInstance,
    partition: PartitionResult | None = None,
    cut: CutResult | None = None,
):
    """Matplotlib figure of a planar instance with optional overlays."""
    if inst.d != 2:
        raise ValueError(f"rendering supports d=2 only, got d={inst.d}")
    fig, ax = plt.subplots(figsize=(6, 6))

    pts = np.array([[float(c) for c in p] for p in inst.points()], dtype=float)
    if pts.size == 0:
        pts = np.zeros((0, 2))

    if partition is not None:
        for s in partition.simplices:
            (x0, y0), (x1, y1) = [[float(c) for c in p] for p in s.points]
            ax.plot([x0, x1], [y0, y1], color="0.3", lw=1.2, zorder=1)

    for color, cls in enumerate(inst.classes):
        if not cls:
            continue
        xy = np.array([[float(c) for c in p] for p in cls])
        ax.scatter(
            xy[:, 0],
            xy[:, 1],
            s=36,
            color=_COLORS[color % len(_COLORS)],
            label=f"color {color}",
            zorder=2,
        )

    if cut is not None and len(pts):
        lo = pts.min(axis=0)
        hi = pts.max(axis=0)
        center = (lo + hi) / 2.0
        span = float(np.max(hi - lo)) or 1.0
        n = np.array([float(c) for c in cut.separator.normal])
        c0 = float(cut.separator.offset)
        foot = center + (c0 - n @ center) / (n @ n) * n
        direction = np.array([-n[1], n[0]])
        direction /= np.linalg.norm(direction)
        p0 = foot - direction * span
        p1 = foot + direction * span
        ax.plot([p0[0], p1[0]], [p0[1], p1[1]], "k--", lw=1.0, zorder=1)

    ax.set_aspect("equal", "box")
    if inst.total:
        ax.legend(loc="best", fontsize=8)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    fig.tight_layout()
    return fig


def save_svg(fig, path: str) -> None:
    fig.savefig(path, format="svg")
    plt.close(fig)
