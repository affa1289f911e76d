"""Matplotlib drawings of triangulations (with their dual graph) and of skeletons."""

import logging
from collections import Counter
from pathlib import Path
from typing import Dict, Tuple, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402
from matplotlib.patches import Circle as CirclePatch  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from troplanar.graphs import Circle, Graph  # noqa: E402
from troplanar.skeleton import skeletonize  # noqa: E402
from troplanar.triangulation import Triangulation, dual_graph  # noqa: E402

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
Point = Tuple[float, float]


def _centroid(t) -> Point:
    return (sum(v.x for v in t.vertices) / 3, sum(v.y for v in t.vertices) / 3)


def render_triangulation(tri: Triangulation, path: PathLike, dual: bool = True, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(6, 6))
    for t in tri.sorted_triangles():
        xs = [v.x for v in t.vertices] + [t.vertices[0].x]
        ys = [v.y for v in t.vertices] + [t.vertices[0].y]
        ax.plot(xs, ys, color="0.6", linewidth=0.8)
    boundary = list(tri.polygon.vertices) + [tri.polygon.vertices[0]]
    ax.plot([v.x for v in boundary], [v.y for v in boundary], color="black", linewidth=1.6)

    interior = sorted(tri.polygon.interior_points)
    others = sorted(tri.polygon.lattice_points - tri.polygon.interior_points)
    ax.scatter([p.x for p in others], [p.y for p in others], s=18, color="black", zorder=3)
    ax.scatter([p.x for p in interior], [p.y for p in interior], s=30, color="tab:red", zorder=3)

    if dual:
        graph = dual_graph(tri)
        centres = [_centroid(t) for t in graph.nodes]
        for i, j, _ in graph.arcs:
            ax.plot([centres[i][0], centres[j][0]], [centres[i][1], centres[j][1]], color="tab:blue", linewidth=1.0)
        if tri.genus > 0:
            ps = skeletonize(tri)
            marked = [_centroid(t) for t in ps.vertex_triangles]
            ax.scatter([p[0] for p in marked], [p[1] for p in marked], s=28, color="tab:blue", zorder=4)

    ax.set_aspect("equal")
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    out = Path(path)
    fig.savefig(out, bbox_inches="tight")
    plt.close(fig)
    logger.info(f"Wrote {out}")
    return out


def render_graph(graph: Graph, path: PathLike, title: str = "", seed: int = 0) -> Path:
    """Spring layout; parallel edges are bent apart and loops drawn as small circles."""
    fig, ax = plt.subplots(figsize=(5, 5))
    if isinstance(graph, Circle):
        ax.add_patch(CirclePatch((0, 0), 1.0, fill=False, linewidth=1.5))
        ax.set_xlim(-1.5, 1.5)
        ax.set_ylim(-1.5, 1.5)
    else:
        simple = nx.Graph()
        simple.add_nodes_from(range(graph.n))
        simple.add_edges_from((a, b) for a, b in graph.edges if a != b)
        pos: Dict[int, Point] = {
            v: (float(x), float(y)) for v, (x, y) in nx.spring_layout(simple, seed=seed).items()
        }
        seen: Counter = Counter()
        counts = Counter(graph.edges)
        for a, b in graph.edges:
            k = seen[(a, b)]
            seen[(a, b)] += 1
            if a == b:
                x, y = pos[a]
                r = 0.08 + 0.04 * k
                ax.add_patch(CirclePatch((x, y + r), r, fill=False, linewidth=1.2))
                continue
            bend = 0.0 if counts[(a, b)] == 1 else 0.3 * (k - (counts[(a, b)] - 1) / 2)
            ax.add_patch(
                FancyArrowPatch(pos[a], pos[b], arrowstyle="-", connectionstyle=f"arc3,rad={bend}", linewidth=1.2)
            )
        xs = [p[0] for p in pos.values()]
        ys = [p[1] for p in pos.values()]
        ax.scatter(xs, ys, s=60, color="tab:blue", zorder=3)
        for v, (x, y) in pos.items():
            ax.annotate(str(v), (x, y), textcoords="offset points", xytext=(5, 5), fontsize=8)
        ax.set_xlim(min(xs) - 0.4, max(xs) + 0.4)
        ax.set_ylim(min(ys) - 0.4, max(ys) + 0.4)
    ax.set_aspect("equal")
    ax.set_axis_off()
    ax.set_title(title or f"genus {graph.genus}")
    out = Path(path)
    fig.savefig(out, bbox_inches="tight")
    plt.close(fig)
    logger.info(f"Wrote {out}")
    return out
