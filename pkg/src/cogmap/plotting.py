"""Matplotlib figure output for run trajectories and sweep summaries.

Figures are rendered headless to files; the three activation states map
to three distinct colors (indeterminate is never drawn as a shade
between off and on).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.colors import BoundaryNorm, ListedColormap
from matplotlib.patches import Patch

from cogmap.algebra import INDET, ONE
from cogmap.inference import RelationalPattern

_CMAP = ListedColormap(["#f2f2f2", "#2b6cb0", "#d69e2e"])
_NORM = BoundaryNorm([-0.5, 0.5, 1.5, 2.5], _CMAP.N)
_LEGEND = [
    Patch(facecolor="#f2f2f2", edgecolor="#999", label="off"),
    Patch(facecolor="#2b6cb0", label="on"),
    Patch(facecolor="#d69e2e", label="indeterminate"),
]


def _encode(state):
    return [1 if v == ONE else 2 if v == INDET else 0 for v in state.values]


def _grid_figure(matrix, col_labels, row_labels, title, path, divider=None):
    fig_w = max(4.0, 0.42 * len(col_labels) + 2.0)
    fig_h = max(2.5, 0.32 * len(matrix) + 1.6)
    fig, ax = plt.subplots(figsize=(fig_w, fig_h))
    ax.imshow(matrix, cmap=_CMAP, norm=_NORM, aspect="auto")
    ax.set_xticks(range(len(col_labels)))
    ax.set_xticklabels(col_labels, rotation=90, fontsize=7)
    ax.set_yticks(range(len(matrix)))
    ax.set_yticklabels(row_labels, fontsize=7)
    if divider is not None:
        ax.axvline(divider - 0.5, color="black", linewidth=1.2)
    ax.set_title(title, fontsize=9)
    ax.legend(handles=_LEGEND, fontsize=6, loc="upper left", bbox_to_anchor=(1.01, 1.0))
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_trajectory_figure(mapping, pattern, path):
    """Heatmap of the post-threshold trajectory, one row per iteration."""
    if isinstance(pattern, RelationalPattern):
        cols = list(mapping.domain_labels) + list(mapping.range_labels)
        matrix = [
            _encode(pair.domain) + _encode(pair.range) for pair in pattern.trajectory
        ]
        divider = mapping.domain_count
    else:
        cols = list(mapping.labels)
        matrix = [_encode(s) for s in pattern.trajectory]
        divider = None
    rows = [f"t{t}" for t in range(len(matrix))]
    title = f"{pattern.kind.replace('_', ' ')}"
    if pattern.period:
        title += f", period {pattern.period}"
    _grid_figure(matrix, cols, rows, title, path, divider)
    return path


def save_sweep_figure(mapping, entries, path):
    """Final activation per node (columns) for every single-node start (rows)."""
    cols = list(mapping.labels)
    matrix = [_encode(entry.final_state) for entry in entries]
    rows = [entry.node.label for entry in entries]
    _grid_figure(matrix, cols, rows, "sweep: final state per start node", path)
    return path
