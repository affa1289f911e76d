"""
Trivalent Multigraphs
=====================

Small multigraphs with loops and parallel edges: canonical certificates,
genus, bridges, simple cycles, planarity and splitting at a bridge with
2-valent smoothing.

Edges are stored as a sorted tuple of ``(i, j)`` pairs with ``i <= j``; an
edge is addressed by its index in that tuple. A loop ``(v, v)`` contributes
2 to the degree of v.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from troplanar.errors import InvalidGraph, NotACutEdge

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        edges = tuple(sorted(_edge(int(a), int(b)) for a, b in self.edges))
        object.__setattr__(self, "edges", edges)
        for a, b in edges:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise InvalidGraph(f"edge ({a},{b}) refers to a vertex outside 0..{self.n - 1}", self)

    @cached_property
    def incidence(self) -> Tuple[Tuple[int, ...], ...]:
        """Edge indices at each vertex; a loop appears twice."""
        inc: List[List[int]] = [[] for _ in range(self.n)]
        for k, (a, b) in enumerate(self.edges):
            inc[a].append(k)
            inc[b].append(k)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def loops(self, v: int) -> int:
        return sum(1 for a, b in self.edges if a == b == v)

    def other(self, k: int, v: int) -> int:
        a, b = self.edges[k]
        return b if a == v else a

    def neighbours(self, v: int) -> List[int]:
        return sorted({self.other(k, v) for k in self.incidence[v]} - {v})

    @cached_property
    def multiplicity(self) -> Dict[Edge, int]:
        return dict(Counter(self.edges))

    def components(self, removed: Iterable[int] = (), vertices: Optional[Iterable[int]] = None) -> List[FrozenSet[int]]:
        """Connected components after deleting the given edges (and keeping only ``vertices``)."""
        skip = set(removed)
        alive = set(range(self.n)) if vertices is None else set(vertices)
        seen: Set[int] = set()
        out = []
        for s in sorted(alive):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                v = stack.pop()
                for k in self.incidence[v]:
                    if k in skip:
                        continue
                    u = self.other(k, v)
                    if u in alive and u not in comp:
                        comp.add(u)
                        stack.append(u)
            seen |= comp
            out.append(frozenset(comp))
        return out

    @property
    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    @property
    def genus(self) -> int:
        """First Betti number."""
        return len(self.edges) - self.n + len(self.components())

    def edges_within(self, vertices: Iterable[int], removed: Iterable[int] = ()) -> List[int]:
        vs = set(vertices)
        skip = set(removed)
        return [k for k, (a, b) in enumerate(self.edges) if a in vs and b in vs and k not in skip]

    def subgraph_genus(self, vertices: Iterable[int], removed: Iterable[int] = ()) -> int:
        vs = set(vertices)
        edges = self.edges_within(vs, removed)
        comps = self.components(removed=set(range(len(self.edges))) - set(edges), vertices=vs)
        return len(edges) - len(vs) + len(comps)

    @cached_property
    def bridges(self) -> Tuple[int, ...]:
        out = []
        base = len(self.components())
        for k, (a, b) in enumerate(self.edges):
            if a == b or self.multiplicity[(a, b)] > 1:
                continue
            if len(self.components(removed=[k])) > base:
                out.append(k)
        return tuple(out)

    def is_bridge(self, k: int) -> bool:
        return k in self.bridges

    def far_side(self, k: int, near: int) -> FrozenSet[int]:
        """Vertices reachable from the far endpoint of bridge k without crossing it."""
        start = self.other(k, near)
        for comp in self.components(removed=[k]):
            if start in comp:
                return comp
        raise NotACutEdge(f"edge {k} has no far side", k)

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.n))
        for k, (a, b) in enumerate(self.edges):
            g.add_edge(a, b, key=k)
        return g

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        return type(self)(self.n, tuple(_edge(perm[a], perm[b]) for a, b in self.edges))

    @cached_property
    def labeling(self) -> Tuple[str, Tuple[int, ...]]:
        return canonical_labeling(self)

    @property
    def certificate(self) -> str:
        return self.labeling[0]

    def __str__(self) -> str:
        return f"graph(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class Skeleton(Multigraph):
    """Connected trivalent multigraph."""

    def __post_init__(self):
        super().__post_init__()
        for v in range(self.n):
            d = self.degree(v)
            if d != 3:
                raise InvalidGraph(f"vertex {v} has degree {d}, expected 3", self)


@dataclass(frozen=True)
class Circle:
    """A cycle without trivalent vertices; genus 1."""

    n: int = 0
    edges: Tuple[Edge, ...] = ()

    @property
    def genus(self) -> int:
        return 1

    @property
    def certificate(self) -> str:
        return "circle"

    @property
    def is_connected(self) -> bool:
        return True

    @property
    def bridges(self) -> Tuple[int, ...]:
        return ()

    def __str__(self) -> str:
        return "circle"


Graph = Union[Skeleton, Circle]


@dataclass(frozen=True)
class GraphComponentPiece:
    """One side of a bridge after smoothing; ``attachment_edge`` is the edge that absorbed the
    former bridge endpoint (None for a Circle)."""

    graph: Graph
    attachment_edge: Optional[int] = None

    @property
    def genus(self) -> int:
        return self.graph.genus


# --- canonical form -------------------------------------------------------------------------


def _rank(keys: Sequence[object]) -> List[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}  # type: ignore[type-var]
    return [order[k] for k in keys]


def _refine(g: Multigraph, colors: List[int]) -> List[int]:
    mult = g.multiplicity
    while True:
        sig = []
        for v in range(g.n):
            around = sorted((colors[u], mult[_edge(u, v)]) for u in g.neighbours(v))
            sig.append((colors[v], tuple(around)))
        refined = _rank(sig)
        if len(set(refined)) == len(set(colors)):
            return refined
        colors = refined


def _encode(g: Multigraph, colors: List[int]) -> Tuple[Edge, ...]:
    return tuple(sorted(_edge(colors[a], colors[b]) for a, b in g.edges))


def canonical_labeling(g: Multigraph) -> Tuple[str, Tuple[int, ...]]:
    """Certificate string and the relabeling (vertex -> canonical index) realizing it.

    Colour refinement on degree, loop count and edge multiplicities, then
    individualization of the first non-singleton cell, branching over its
    members; the lexicographically smallest edge encoding wins.
    """
    if g.n == 0:
        return "0:", ()
    start = _refine(g, _rank([(g.degree(v), g.loops(v)) for v in range(g.n)]))
    best: Optional[Tuple[Tuple[Edge, ...], List[int]]] = None

    stack = [start]
    while stack:
        colors = stack.pop()
        cells = Counter(colors)
        if len(cells) == g.n:
            code = _encode(g, colors)
            if best is None or code < best[0]:
                best = (code, colors)
            continue
        target = min(c for c, size in cells.items() if size > 1)
        for v in sorted((u for u in range(g.n) if colors[u] == target), reverse=True):
            split = _rank([(colors[u], 0 if u == v else 1) for u in range(g.n)])
            stack.append(_refine(g, split))

    assert best is not None
    code, order = best
    cert = f"{g.n}:" + ",".join(f"{a}-{b}" for a, b in code)
    return cert, tuple(order)


def canonical_certificate(g: Graph) -> str:
    return g.certificate


def isomorphism(g: Multigraph, h: Multigraph) -> Optional[Tuple[int, ...]]:
    """A vertex map g -> h, or None when the graphs are not isomorphic."""
    cert_g, order_g = g.labeling
    cert_h, order_h = h.labeling
    if cert_g != cert_h:
        return None
    inverse_h = {c: v for v, c in enumerate(order_h)}
    return tuple(inverse_h[order_g[v]] for v in range(g.n))


# --- cycles and planarity -------------------------------------------------------------------


@dataclass(frozen=True)
class Cycle:
    """Simple cycle: vertex sequence and the edge indices between consecutive vertices."""

    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    @property
    def edge_set(self) -> FrozenSet[int]:
        return frozenset(self.edges)

    @property
    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.vertices)

    def __len__(self) -> int:
        return len(self.edges)


def simple_cycles(g: Multigraph) -> List[Cycle]:
    """Every simple cycle, including loops and 2-cycles of parallel edges."""
    found: Dict[FrozenSet[int], Cycle] = {}
    for k, (a, b) in enumerate(g.edges):
        if a == b:
            found[frozenset([k])] = Cycle((a,), (k,))

    def walk(start: int, path: List[int], used: List[int]) -> None:
        v = path[-1]
        for k in g.incidence[v]:
            a, b = g.edges[k]
            if a == b or k in used:
                continue
            u = g.other(k, v)
            if u == start and len(used) >= 1:
                key = frozenset(used + [k])
                if key not in found:
                    found[key] = Cycle(tuple(path), tuple(used + [k]))
            elif u > start and u not in path:
                walk(start, path + [u], used + [k])

    for s in range(g.n):
        walk(s, [s], [])
    return sorted(found.values(), key=lambda c: (len(c), sorted(c.edges)))


def is_planar(g: Union[Multigraph, Circle], apex: Iterable[int] = ()) -> bool:
    """Planarity of the simple graph obtained by subdividing every edge (loops twice).

    With ``apex`` an extra vertex joined to those vertices is added first; for
    a cycle's vertex set this tests whether the cycle can bound a face.
    """
    if isinstance(g, Circle):
        return True
    simple = nx.Graph()
    simple.add_edges_from(("apex", v) for v in apex)
    simple.add_nodes_from(range(g.n))
    for k, (a, b) in enumerate(g.edges):
        if a == b:
            simple.add_edges_from([(a, ("e", k, 0)), (("e", k, 0), ("e", k, 1)), (("e", k, 1), b)])
        else:
            simple.add_edges_from([(a, ("e", k)), (("e", k), b)])
    planar, _ = nx.check_planarity(simple)
    return bool(planar)


def cut_edges(g: Graph) -> Tuple[int, ...]:
    return g.bridges


# --- smoothing and splitting ---------------------------------------------------------------


def smooth(n: int, edges: Sequence[Edge]) -> Tuple[int, List[Edge], List[int]]:
    """Suppress every 2-valent vertex that is not the only vertex of a loop.

    Returns ``(n', edges', kept)`` where ``kept`` maps new vertex indices to old ones.
    """
    work = [list(e) for e in edges]
    alive = set(range(n))
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            ends = [(k, side) for k, e in enumerate(work) for side in (0, 1) if e[side] == v]
            if len(ends) != 2:
                continue
            (k1, s1), (k2, s2) = ends
            if k1 == k2:
                continue
            a = work[k1][1 - s1]
            b = work[k2][1 - s2]
            work = [e for k, e in enumerate(work) if k not in (k1, k2)] + [[a, b]]
            alive.discard(v)
            changed = True
            break
    kept = sorted(alive)
    index = {v: i for i, v in enumerate(kept)}
    return len(kept), [_edge(index[a], index[b]) for a, b in work], kept


def induced(g: Multigraph, vertices: Iterable[int], removed: Iterable[int] = ()) -> Tuple[Multigraph, List[int]]:
    """Subgraph on ``vertices`` (minus the removed edges), relabeled; returns the old labels too."""
    kept = sorted(set(vertices))
    index = {v: i for i, v in enumerate(kept)}
    edges = [g.edges[k] for k in g.edges_within(kept, removed)]
    return Multigraph(len(kept), tuple(_edge(index[a], index[b]) for a, b in edges)), kept


def as_piece(n: int, edges: Sequence[Edge]) -> Graph:
    """Smooth and wrap as Skeleton, or Circle for a lone cycle."""
    m, smoothed, _ = smooth(n, edges)
    if m == 0 or (m == 1 and smoothed == [(0, 0)]):
        return Circle()
    return Skeleton(m, tuple(smoothed))


def split_at_cut_edge(g: Skeleton, k: int) -> Tuple[GraphComponentPiece, GraphComponentPiece]:
    """The two sides of bridge k, each with its endpoint smoothed away."""
    if not g.is_bridge(k):
        raise NotACutEdge(f"edge {k} {g.edges[k]} is not a cut edge", k)
    u, v = g.edges[k]
    pieces = []
    for endpoint in (u, v):
        side = g.far_side(k, g.other(k, endpoint))
        sub, kept = induced(g, side, removed=[k])
        graph = as_piece(sub.n, sub.edges)
        attachment = None
        if isinstance(graph, Skeleton):
            # the smoothed endpoint turned into the last edge appended by smooth()
            _, edges, _ = smooth(sub.n, sub.edges)
            attachment = graph.edges.index(edges[-1])
        pieces.append(GraphComponentPiece(graph, attachment))
    logger.debug(f"Split {g.certificate} at {g.edges[k]} into genus {pieces[0].genus} + {pieces[1].genus}")
    return pieces[0], pieces[1]


def from_edges(edges: Iterable[Edge], n: Optional[int] = None) -> Skeleton:
    es = list(edges)
    if n is None:
        n = 1 + max(max(e) for e in es)
    return Skeleton(n, tuple(es))
