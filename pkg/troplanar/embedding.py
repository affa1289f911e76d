"""
Planar embeddings of small multigraphs as rotation systems.

A dart is ``(edge index, side)``; side 0 leaves ``edges[k][0]``. A rotation
system fixes a cyclic order of the darts leaving every vertex, and the faces
are the orbits of "reverse the dart, then take the next one in the rotation
at its head". The embedding is planar when V - E + F = 2 (connected graphs).
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, Tuple

import networkx as nx

from troplanar.graphs import Multigraph

logger = logging.getLogger(__name__)

Dart = Tuple[int, int]
Rotation = Tuple[Tuple[Dart, ...], ...]


def tail(g: Multigraph, d: Dart) -> int:
    return g.edges[d[0]][d[1]]


def head(g: Multigraph, d: Dart) -> int:
    return g.edges[d[0]][1 - d[1]]


def darts_at(g: Multigraph, v: int) -> List[Dart]:
    out = []
    for k, (a, b) in enumerate(g.edges):
        if a == v:
            out.append((k, 0))
        if b == v:
            out.append((k, 1))
    return out


@dataclass(frozen=True)
class Face:
    darts: Tuple[Dart, ...]
    vertices: Tuple[int, ...]

    @property
    def edges(self) -> Tuple[int, ...]:
        return tuple(k for k, _ in self.darts)

    @cached_property
    def edge_set(self) -> FrozenSet[int]:
        return frozenset(self.edges)

    @cached_property
    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.vertices)

    @property
    def repeats_edge(self) -> bool:
        return len(self.edge_set) < len(self.edges)

    @property
    def is_simple_cycle(self) -> bool:
        return not self.repeats_edge and len(self.vertex_set) == len(self.vertices)

    def __len__(self) -> int:
        return len(self.darts)


def trace_faces(g: Multigraph, rotation: Rotation) -> Tuple[Face, ...]:
    successor: Dict[Dart, Dart] = {}
    for cyc in rotation:
        for i, d in enumerate(cyc):
            successor[d] = cyc[(i + 1) % len(cyc)]
    seen = set()
    faces = []
    for k in range(len(g.edges)):
        for side in (0, 1):
            start = (k, side)
            if start in seen:
                continue
            walk = []
            d = start
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = successor[(d[0], 1 - d[1])]
            faces.append(Face(tuple(walk), tuple(tail(g, x) for x in walk)))
    return tuple(faces)


@dataclass(frozen=True)
class Embedding:
    graph: Multigraph
    rotation: Rotation
    faces: Tuple[Face, ...]

    @cached_property
    def face_of(self) -> Dict[Dart, int]:
        return {d: i for i, f in enumerate(self.faces) for d in f.darts}

    @property
    def euler_characteristic(self) -> int:
        return self.graph.n - len(self.graph.edges) + len(self.faces)

    @property
    def is_planar(self) -> bool:
        return self.euler_characteristic == 2

    def faces_at_edge(self, k: int) -> Tuple[int, int]:
        return self.face_of[(k, 0)], self.face_of[(k, 1)]

    def bounded(self, outer: int) -> List[int]:
        return [i for i in range(len(self.faces)) if i != outer]


def rotation_systems(g: Multigraph) -> Iterator[Rotation]:
    choices = []
    for v in range(g.n):
        ds = darts_at(g, v)
        if len(ds) <= 2:
            choices.append([tuple(ds)])
        else:
            first, rest = ds[0], ds[1:]
            choices.append([(first,) + p for p in itertools.permutations(rest)])
    for combo in itertools.product(*choices):
        yield tuple(combo)


def embeddings(g: Multigraph) -> Iterator[Embedding]:
    for rotation in rotation_systems(g):
        yield Embedding(g, rotation, trace_faces(g, rotation))


def planar_embeddings(g: Multigraph) -> Iterator[Embedding]:
    """Every rotation system with Euler characteristic 2 (g connected)."""
    for emb in embeddings(g):
        if emb.is_planar:
            yield emb


def link_graph(emb: Embedding, outer: int) -> nx.Graph:
    """Bounded faces, linked when they share a vertex or are joined through
    edges that lie on the outer face only."""
    g = emb.graph
    bounded = emb.bounded(outer)
    on_face: Dict[int, List[int]] = {v: [] for v in range(g.n)}
    for i in bounded:
        for v in emb.faces[i].vertex_set:
            on_face[v].append(i)
    outer_only = [k for k in range(len(g.edges)) if emb.faces_at_edge(k) == (outer, outer)]

    link = nx.Graph()
    link.add_nodes_from(bounded)
    for v, fs in on_face.items():
        for a, b in itertools.combinations(fs, 2):
            link.add_edge(a, b)

    for i in bounded:
        # walk along outer-only edges from the face, stopping at vertices of other faces
        start = set(emb.faces[i].vertex_set)
        seen = set(start)
        frontier = list(start)
        while frontier:
            v = frontier.pop()
            for k in outer_only:
                a, b = g.edges[k]
                if v not in (a, b):
                    continue
                u = b if a == v else a
                if u in seen:
                    continue
                seen.add(u)
                hits = [f for f in on_face[u] if f != i]
                if hits:
                    link.add_edges_from((i, f) for f in hits)
                else:
                    frontier.append(u)
    return link


def is_path(graph: nx.Graph) -> bool:
    n = graph.number_of_nodes()
    if n == 0:
        return False
    if n == 1:
        return True
    return (
        nx.is_connected(graph)
        and graph.number_of_edges() == n - 1
        and max(d for _, d in graph.degree()) <= 2
    )


def path_ends(graph: nx.Graph) -> List[int]:
    if graph.number_of_nodes() == 1:
        return list(graph.nodes)
    return sorted(v for v, d in graph.degree() if d == 1)


def shared_edges(a: Face, b: Face) -> FrozenSet[int]:
    return a.edge_set & b.edge_set


def crowded_in(emb: Embedding, outer: int) -> bool:
    """Two bounded faces share two or more edges, or a bounded face uses an edge twice."""
    bounded = [emb.faces[i] for i in emb.bounded(outer)]
    if any(f.repeats_edge for f in bounded):
        return True
    return any(len(shared_edges(a, b)) >= 2 for a, b in itertools.combinations(bounded, 2))

