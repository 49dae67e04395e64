"""Figure rendering for the report path; every function writes one PNG."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # file output only, no display server
import matplotlib.pyplot as plt
import numpy as np

from .metrics import JusticeReport
from .model import AssessmentMatrix, RankingList, WeightMatrix
from .passion import PassionResult
from .stratify import ClusterAssignment

__all__ = [
    "save_ranking_figure",
    "save_assessment_heatmap",
    "save_justice_heatmap",
    "save_cluster_scatter",
    "save_passion_figure",
]


def _finish(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def save_ranking_figure(ranking: RankingList, path: str | Path, title: str | None = None) -> Path:
    """Horizontal bars, best rank on top."""
    ids = [e.staff_id for e in ranking.entries]
    scores = [e.score for e in ranking.entries]
    fig, ax = plt.subplots(figsize=(7, max(2.5, 0.28 * len(ids))))
    ax.barh(range(len(ids)), scores, color="#33658a")
    ax.set_yticks(range(len(ids)), ids)
    ax.invert_yaxis()
    ax.set_xlabel("score")
    ax.set_title(title or ranking.provenance.describe())
    return _finish(fig, path)


def save_assessment_heatmap(matrix: AssessmentMatrix, path: str | Path, title: str = "assessment") -> Path:
    ids = matrix.roster.staff_ids
    fig, ax = plt.subplots(figsize=(0.3 * len(ids) + 2, 0.3 * len(ids) + 2))
    im = ax.imshow(matrix.values, cmap="viridis")
    ax.set_xticks(range(len(ids)), ids, rotation=90, fontsize=6)
    ax.set_yticks(range(len(ids)), ids, fontsize=6)
    ax.set_xlabel("assessed")
    ax.set_ylabel("assessor")
    ax.set_title(title)
    fig.colorbar(im, ax=ax, shrink=0.8)
    return _finish(fig, path)


def save_justice_heatmap(report: JusticeReport, path: str | Path) -> Path:
    a_names = sorted({a for a, _ in report.pairwise})
    b_names = sorted({b for _, b in report.pairwise})
    grid = np.full((len(a_names), len(b_names)), np.nan)
    for (a, b), v in report.pairwise.items():
        grid[a_names.index(a), b_names.index(b)] = v
    fig, ax = plt.subplots(figsize=(1.2 * len(b_names) + 2, 1.0 * len(a_names) + 2))
    im = ax.imshow(grid, cmap="RdYlGn_r", vmin=0, vmax=1)
    ax.set_xticks(range(len(b_names)), b_names, rotation=30, ha="right")
    ax.set_yticks(range(len(a_names)), a_names)
    ax.set_xlabel("reward list")
    ax.set_ylabel("achievement list")
    for i in range(len(a_names)):
        for j in range(len(b_names)):
            if not np.isnan(grid[i, j]):
                ax.text(j, i, f"{grid[i, j]:.3f}", ha="center", va="center", fontsize=8)
    ax.set_title(f"injustice (overall {report.overall:.3f})")
    fig.colorbar(im, ax=ax, shrink=0.8)
    return _finish(fig, path)


def save_cluster_scatter(weights: WeightMatrix, assignment: ClusterAssignment, path: str | Path) -> Path:
    """Scatter on the two weight dimensions with the widest spread."""
    rows = weights.rows
    spread = rows.std(axis=0)
    dims = np.argsort(spread)[::-1][:2]
    if len(dims) < 2:  # single-category weights: plot against roster index
        dims = np.array([0, 0])
    names = weights.categories.names
    fig, ax = plt.subplots(figsize=(6, 5))
    colors = plt.colormaps["tab10"]
    index = {s: i for i, s in enumerate(weights.roster.staff_ids)}
    for c, members in enumerate(assignment.clusters):
        pts = rows[[index[m] for m in members]]
        ax.scatter(pts[:, dims[0]], pts[:, dims[1]], color=colors(c % 10), label=f"cluster {c + 1}", s=30)
        for m in members:
            ax.annotate(m, (rows[index[m], dims[0]], rows[index[m], dims[1]]), fontsize=6)
    ax.set_xlabel(names[dims[0]])
    ax.set_ylabel(names[dims[1]])
    ax.legend()
    ax.set_title("value-system clusters")
    return _finish(fig, path)


def save_passion_figure(result: PassionResult, path: str | Path) -> Path:
    return save_ranking_figure(result.ranking, path, title="work passion (average share)")
