"""
Skeletonization
===============

The skeleton of a full triangulation is obtained from its dual graph by
dropping the ray stubs, repeatedly deleting degree-1 nodes and replacing
every maximal path through 2-valent nodes by one edge.

Provenance is kept along the way: each skeleton edge remembers the chain of
triangulation segments it replaced, each interior lattice point its cycle,
and each bridge the split edges it crosses.
"""

import json
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from troplanar.errors import GenusZero
from troplanar.graphs import Circle, Graph, Skeleton
from troplanar.lattice import LatticePoint
from troplanar.triangulation import Segment, SplitEdge, Triangle, Triangulation, dual_graph, split_edges

logger = logging.getLogger(__name__)

Arc = Tuple[int, int]


@dataclass(frozen=True)
class Retraction:
    """Result of pruning and smoothing a multigraph given as an arc list."""

    vertices: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]
    chains: Tuple[Tuple[int, ...], ...]
    pruned: Tuple[int, ...]
    free_cycle: Tuple[int, ...] = ()


def retract(n: int, arcs: Sequence[Arc]) -> Retraction:
    """Prune leaves, then smooth 2-valent paths.

    ``edges`` refer to positions in ``vertices``; ``chains[k]`` lists the arc
    indices merged into edge k. A core that is a single cycle comes back in
    ``free_cycle`` with no vertices.
    """
    incident: List[Set[int]] = [set() for _ in range(n)]
    for k, (a, b) in enumerate(arcs):
        incident[a].add(k)
        incident[b].add(k)

    def degree(v: int) -> int:
        return sum(2 if arcs[k][0] == arcs[k][1] else 1 for k in incident[v])

    alive = set(range(n))
    live_arcs = set(range(len(arcs)))
    pruned = []
    stack = [v for v in range(n) if degree(v) <= 1]
    while stack:
        v = stack.pop()
        if v not in alive or degree(v) > 1:
            continue
        alive.discard(v)
        pruned.append(v)
        for k in list(incident[v]):
            live_arcs.discard(k)
            a, b = arcs[k]
            u = b if a == v else a
            incident[u].discard(k)
            if u in alive and degree(u) <= 1:
                stack.append(u)
        incident[v].clear()

    branch = sorted(v for v in alive if degree(v) >= 3)
    if not branch:
        return Retraction((), (), (), tuple(pruned), tuple(sorted(live_arcs)))

    index = {v: i for i, v in enumerate(branch)}
    used: Set[int] = set()
    found = []
    for start in branch:
        for first in sorted(incident[start]):
            if first in used:
                continue
            chain = [first]
            used.add(first)
            a, b = arcs[first]
            v = b if a == start else a
            while v not in index:
                (nxt,) = [k for k in incident[v] if k not in used]
                used.add(nxt)
                chain.append(nxt)
                a, b = arcs[nxt]
                v = b if a == v else a
            pair = tuple(sorted((index[start], index[v])))
            found.append((pair, tuple(sorted(chain))))
    found.sort()
    return Retraction(
        tuple(branch),
        tuple(p for p, _ in found),  # type: ignore[misc]
        tuple(c for _, c in found),
        tuple(pruned),
    )


@dataclass(frozen=True)
class ProvenancedSkeleton:
    skeleton: Graph
    cycle_map: Dict[LatticePoint, Tuple[int, ...]]
    bridge_map: Dict[int, Tuple[SplitEdge, ...]]
    vertex_triangles: Tuple[Triangle, ...]
    edge_segments: Tuple[Tuple[Segment, ...], ...]
    pruned_triangles: Tuple[Triangle, ...]
    triangulation: Optional[Triangulation] = None

    @property
    def genus(self) -> int:
        return self.skeleton.genus

    def edge_of_segment(self, seg: Segment) -> Optional[int]:
        for k, chain in enumerate(self.edge_segments):
            if seg in chain:
                return k
        return None

    def vertex_of_triangle(self, t: Triangle) -> Optional[int]:
        try:
            return self.vertex_triangles.index(t)
        except ValueError:
            return None


def skeletonize(tri: Triangulation) -> ProvenancedSkeleton:
    if tri.genus == 0:
        raise GenusZero(f"{tri.polygon} has no interior lattice points", tri)
    dual = dual_graph(tri)
    arcs = [(i, j) for i, j, _ in dual.arcs]
    segs = [s for _, _, s in dual.arcs]
    ret = retract(len(dual.nodes), arcs)
    pruned = tuple(dual.nodes[i] for i in sorted(ret.pruned))

    if ret.free_cycle:
        z = next(iter(tri.polygon.interior_points))
        logger.debug(f"Genus 1 triangulation retracts to a circle around {z}")
        return ProvenancedSkeleton(Circle(), {z: ()}, {}, (), (), pruned, tri)

    skeleton = Skeleton(len(ret.vertices), ret.edges)
    edge_segments = tuple(tuple(sorted(segs[k] for k in chain)) for chain in ret.chains)

    cycle_map = {}
    for z in sorted(tri.polygon.interior_points):
        cycle_map[z] = tuple(k for k, chain in enumerate(edge_segments) if any(z in s for s in chain))

    by_segment = {s.segment: s for s in split_edges(tri) if s.nontrivial}
    bridge_map = {}
    for k in skeleton.bridges:
        hits = tuple(by_segment[s] for s in edge_segments[k] if s in by_segment)
        bridge_map[k] = hits

    logger.debug(f"Skeleton: {skeleton.n} vertices, {len(skeleton.edges)} edges, genus {skeleton.genus}")
    return ProvenancedSkeleton(
        skeleton,
        cycle_map,
        bridge_map,
        tuple(dual.nodes[i] for i in ret.vertices),
        edge_segments,
        pruned,
        tri,
    )


def retract_graph(graph: Union[Skeleton, Circle]) -> Graph:
    """Skeleton of an arbitrary multigraph; the identity on trivalent ones."""
    if isinstance(graph, Circle):
        return graph
    ret = retract(graph.n, graph.edges)
    if ret.free_cycle:
        return Circle()
    return Skeleton(len(ret.vertices), ret.edges)


def to_dot(ps: Union[ProvenancedSkeleton, Graph], name: str = "skeleton") -> str:
    graph = ps.skeleton if isinstance(ps, ProvenancedSkeleton) else ps
    lines = [f"graph {name} {{"]
    if isinstance(graph, Circle):
        lines.append('  c [label="circle"];')
        lines.append("  c -- c;")
    else:
        for v in range(graph.n):
            lines.append(f"  {v};")
        for a, b in graph.edges:
            lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(ps: ProvenancedSkeleton) -> str:
    graph = ps.skeleton
    payload = {
        "genus": graph.genus,
        "certificate": graph.certificate,
        "vertices": graph.n,
        "edges": [list(e) for e in graph.edges],
        "loops": {str(v): graph.loops(v) for v in range(graph.n) if graph.loops(v)}
        if isinstance(graph, Skeleton) else {},
        "cycle_map": {f"{z.x},{z.y}": list(ks) for z, ks in sorted(ps.cycle_map.items())},
        "bridge_map": {str(k): [str(s) for s in v] for k, v in sorted(ps.bridge_map.items())},
    }
    return json.dumps(payload, indent=2)
