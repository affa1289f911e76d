"""
Obstruction Detectors
=====================

Graph-level patterns that keep a trivalent planar graph from being the
skeleton of a smooth tropical plane curve.

Heavy cycles are anchored at an edge ``f = v1 v2`` whose endpoints both
carry a bridge leading away from the cycle. The heavy component H is what
remains connected to f once both bridges are cut. A cycle C through f is a
match when some planar embedding of H has C as a face with the outer face on
the other side of f. Conditions that talk about the shape of the heavy
component are evaluated over those embeddings: a match is obstructed only
when every embedding fails.

Double heavy cycles are anchored at a vertex v whose neighbours v1 and v2
carry bridges to loops; C1 and C2 are the faces across v v1 and v v2.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

from troplanar.embedding import Embedding, crowded_in, is_path, link_graph, path_ends, planar_embeddings
from troplanar.errors import NotDoubleHeavyMatch, NotOneLoopMatch, NotTwoLoopsMatch
from troplanar.graphs import Edge, Multigraph, Skeleton, as_piece, induced, is_planar, simple_cycles

logger = logging.getLogger(__name__)


class ObstructionKind(str, Enum):
    SPRAWLING_NODE = "SprawlingNode"
    SPRAWLING_TRIANGLE = "SprawlingTriangle"
    CROWDED = "Crowded"
    TIE_FIGHTER = "TieFighter"
    HEAVY_TWO_LOOPS = "HeavyTwoLoops"
    CUT_EDGE_RECURSION = "CutEdgeRecursion"
    HEAVY_ONE_LOOP = "HeavyOneLoop"
    DOUBLE_HEAVY_TWO_LOOPS = "DoubleHeavyTwoLoops"
    ENVE_LOOP_CATALOG = "EnveLoopCatalog"


@dataclass(frozen=True)
class Obstruction:
    kind: ObstructionKind
    witness: Mapping[str, Any] = field(default_factory=dict, compare=False)

    def describe(self) -> str:
        details = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"{self.kind.value}({details})" if details else self.kind.value


@dataclass(frozen=True)
class HeavyCycleMatch:
    """One heavy or double heavy cycle occurrence; vertex and edge labels are those of G.

    For a one-loop match G1 is the loop side. For a double heavy match
    ``cycle``/``cycle2`` are C1/C2 and ``v`` is their common vertex opposite
    the outer face.
    """

    cycle: Tuple[int, ...]
    cycle_edges: FrozenSet[int]
    v1: int
    v2: int
    e1: int
    e2: int
    g1: FrozenSet[int]
    g2: FrozenSet[int]
    g1_genus: int
    g2_genus: int
    heavy: FrozenSet[int]
    heavy_genus: int
    anchor_edge: int
    cycle2: Tuple[int, ...] = ()
    cycle2_edges: FrozenSet[int] = frozenset()
    v: Optional[int] = None
    anchor_edge2: Optional[int] = None

    @property
    def kind(self) -> str:
        if self.v is not None:
            return "double-heavy"
        if self.g1_genus == 1 and self.g2_genus == 1:
            return "two-loops"
        if self.g1_genus == 1:
            return "one-loop"
        return "heavy"

    @property
    def anchor(self) -> Tuple[int, ...]:
        if self.v is not None:
            return (self.v, self.anchor_edge, self.anchor_edge2 or 0)
        return (self.anchor_edge,)

    @property
    def g3(self) -> FrozenSet[int]:
        """Heavy component vertices off the matched cycle(s)."""
        return self.heavy - set(self.cycle) - set(self.cycle2)

    def summary(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "cycle": list(self.cycle),
            "cycle_edges": sorted(self.cycle_edges),
            "v1": self.v1,
            "v2": self.v2,
            "bridges": [self.e1, self.e2],
            "g1_genus": self.g1_genus,
            "g2_genus": self.g2_genus,
            "heavy": sorted(self.heavy),
            "heavy_genus": self.heavy_genus,
        }
        if self.v is not None:
            out["cycle2"] = list(self.cycle2)
            out["v"] = self.v
        return out


# --- sprawling node and triangle ------------------------------------------------------------


def detect_sprawling_node(g: Skeleton) -> Optional[Obstruction]:
    for v in range(g.n):
        if g.loops(v):
            continue
        comps = g.components(vertices=[u for u in range(g.n) if u != v])
        if len(comps) == 3:
            return Obstruction(
                ObstructionKind.SPRAWLING_NODE,
                {"vertex": v, "components": [sorted(c) for c in comps]},
            )
    return None


def detect_sprawling_triangle(g: Skeleton) -> Optional[Obstruction]:
    for cyc in simple_cycles(g):
        if len(cyc) != 3:
            continue
        thirds = [k for v in cyc.vertices for k in g.incidence[v] if k not in cyc.edge_set]
        if len(thirds) != 3 or not all(g.is_bridge(k) for k in thirds):
            continue
        rest = [u for u in range(g.n) if u not in cyc.vertex_set]
        comps = g.components(vertices=rest)
        if len(comps) == 3 and all(g.subgraph_genus(c) >= 1 for c in comps):
            return Obstruction(
                ObstructionKind.SPRAWLING_TRIANGLE,
                {"triangle": list(cyc.vertices), "bridges": thirds},
            )
    return None


# --- crowded --------------------------------------------------------------------------------


def is_crowded(g: Multigraph) -> bool:
    """Every planar embedding, whatever its outer face, has two bounded faces sharing two
    or more edges or a bounded face running along an edge twice."""
    seen = False
    for emb in planar_embeddings(g):
        seen = True
        for outer in range(len(emb.faces)):
            if not crowded_in(emb, outer):
                return False
    return seen


# --- heavy components ------------------------------------------------------------------------


def _bridge_at(g: Skeleton, v: int, exclude: int) -> Optional[int]:
    found = [k for k in set(g.incidence[v]) if k != exclude and g.is_bridge(k)]
    return found[0] if len(found) == 1 else None


def _component(g: Skeleton, start: int, removed: Sequence[int]) -> FrozenSet[int]:
    for comp in g.components(removed=removed):
        if start in comp:
            return comp
    return frozenset()


@dataclass(frozen=True)
class _HeavyGraph:
    """H relabeled to 0..n-1 with maps back to G."""

    graph: Multigraph
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    def local_edge(self, k: int) -> int:
        return self.edges.index(k)

    def global_edges(self, ks: Sequence[int]) -> FrozenSet[int]:
        return frozenset(self.edges[k] for k in ks)

    def global_vertices(self, vs: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.vertices[v] for v in vs)


@lru_cache(maxsize=4096)
def _heavy_graph(g: Skeleton, heavy: FrozenSet[int], removed: Tuple[int, ...]) -> _HeavyGraph:
    kept = sorted(heavy)
    index = {v: i for i, v in enumerate(kept)}
    ks = g.edges_within(kept, removed)
    pairs: List[Edge] = []
    for k in ks:
        a, b = g.edges[k]
        pairs.append((min(index[a], index[b]), max(index[a], index[b])))
    order = sorted(range(len(ks)), key=lambda i: pairs[i])
    h = Multigraph(len(kept), tuple(pairs[i] for i in order))
    return _HeavyGraph(h, tuple(kept), tuple(ks[i] for i in order))


@lru_cache(maxsize=1024)
def _embeddings(h: Multigraph) -> Tuple[Embedding, ...]:
    return tuple(planar_embeddings(h))


def detect_heavy_cycle(g: Skeleton) -> List[HeavyCycleMatch]:
    """Every (anchor edge, cycle) occurrence, one-loop, two-loops and plain."""
    matches = []
    for f, (a, b) in enumerate(g.edges):
        if a == b or g.is_bridge(f):
            continue
        ea, eb = _bridge_at(g, a, f), _bridge_at(g, b, f)
        if ea is None or eb is None or ea == eb:
            continue
        removed = tuple(sorted((ea, eb)))
        heavy = _component(g, a, removed)
        heavy_genus = g.subgraph_genus(heavy, removed=removed)
        if heavy_genus < 2:
            continue
        side_a, side_b = g.far_side(ea, a), g.far_side(eb, b)
        genus_a, genus_b = g.subgraph_genus(side_a), g.subgraph_genus(side_b)
        v1, v2, e1, e2, g1, g2, genus1, genus2 = a, b, ea, eb, side_a, side_b, genus_a, genus_b
        if genus_b == 1 and genus_a != 1:
            v1, v2, e1, e2, g1, g2, genus1, genus2 = b, a, eb, ea, side_b, side_a, genus_b, genus_a

        hg = _heavy_graph(g, heavy, removed)
        f_local = hg.local_edge(f)
        for cyc in simple_cycles(hg.graph):
            if f_local not in cyc.edge_set or not is_planar(hg.graph, apex=cyc.vertex_set):
                continue
            matches.append(
                HeavyCycleMatch(
                    cycle=hg.global_vertices(cyc.vertices),
                    cycle_edges=hg.global_edges(cyc.edges),
                    v1=v1, v2=v2, e1=e1, e2=e2, g1=g1, g2=g2,
                    g1_genus=genus1, g2_genus=genus2,
                    heavy=heavy, heavy_genus=heavy_genus, anchor_edge=f,
                )
            )
    logger.debug(f"{len(matches)} heavy cycle matches in {g.certificate}")
    return matches


def _heavy_realizations(g: Skeleton, match: HeavyCycleMatch) -> Iterator[Tuple[Embedding, int, int]]:
    """(embedding of H, outer face, face of C) with C across the anchor edge from the outer face."""
    hg = _heavy_graph(g, match.heavy, tuple(sorted((match.e1, match.e2))))
    f_local = hg.local_edge(match.anchor_edge)
    for emb in _embeddings(hg.graph):
        for side in (0, 1):
            c = emb.face_of[(f_local, side)]
            outer = emb.face_of[(f_local, 1 - side)]
            face = emb.faces[c]
            if c != outer and face.is_simple_cycle and hg.global_edges(face.edges) == match.cycle_edges:
                yield emb, outer, c


def _chain_failures(g: Skeleton, match: HeavyCycleMatch) -> List[str]:
    """Empty when some realization makes H a chain of faces with C at one end."""
    reasons = set()
    for emb, outer, c in _heavy_realizations(g, match):
        link = link_graph(emb, outer)
        if not is_path(link):
            reasons.add("heavy component is not a chain of cycles")
        elif c not in path_ends(link):
            reasons.add("heavy cycle is not at an end of the chain")
        else:
            return []
    return sorted(reasons) or ["heavy cycle bounds no face of the heavy component"]


def far_side_has_cut_edge(g: Skeleton, side: FrozenSet[int], bridge: int) -> bool:
    sub, _ = induced(g, side, removed=[bridge])
    piece = as_piece(sub.n, sub.edges)
    return bool(piece.bridges)


def heavy_one_loop_obstructed(g: Skeleton, match: HeavyCycleMatch) -> Optional[Obstruction]:
    if match.kind != "one-loop":
        raise NotOneLoopMatch(f"match at edge {match.anchor_edge} is {match.kind}, not one-loop", match)
    failed = []
    if match.heavy_genus > 3:
        failed.append(f"heavy component has genus {match.heavy_genus} > 3")
    if match.g2_genus > 3:
        failed.append(f"far side has genus {match.g2_genus} > 3")
    if g.genus == 6 and match.g2_genus == 2 and far_side_has_cut_edge(g, match.g2, match.e2):
        failed.append("genus 2 far side has a cut edge")
    if not failed:
        failed = _chain_failures(g, match)
    if not failed:
        return None
    return Obstruction(ObstructionKind.HEAVY_ONE_LOOP, {**match.summary(), "failed": failed})


def heavy_two_loops_obstructed(g: Skeleton, match: HeavyCycleMatch) -> Optional[Obstruction]:
    if match.kind != "two-loops":
        raise NotTwoLoopsMatch(f"match at edge {match.anchor_edge} is {match.kind}, not two-loops", match)
    if match.heavy_genus > 3:
        failed = [f"heavy component has genus {match.heavy_genus} > 3"]
    else:
        failed = _chain_failures(g, match)
    if not failed:
        return None
    return Obstruction(ObstructionKind.HEAVY_TWO_LOOPS, {**match.summary(), "failed": failed})


# --- double heavy ----------------------------------------------------------------------------


def _double_realizations(
    emb: Embedding, f1: int, f2: int
) -> Iterator[Tuple[int, int, int]]:
    """(outer, C1, C2) with the outer face on the far side of both anchor edges."""
    at1 = set(emb.faces_at_edge(f1))
    at2 = set(emb.faces_at_edge(f2))
    for outer in sorted(at1 & at2):
        rest1 = at1 - {outer}
        rest2 = at2 - {outer}
        if len(rest1) != 1 or len(rest2) != 1:
            continue
        (c1,), (c2,) = rest1, rest2
        a, b = emb.faces[c1], emb.faces[c2]
        if c1 == c2 or not a.is_simple_cycle or not b.is_simple_cycle:
            continue
        if len(a.edge_set & b.edge_set) == 1:
            yield outer, c1, c2


def detect_double_heavy(g: Skeleton) -> List[HeavyCycleMatch]:
    matches: Dict[Tuple[Any, ...], HeavyCycleMatch] = {}
    for v in range(g.n):
        if g.loops(v):
            continue
        for f1, f2 in itertools.combinations(g.incidence[v], 2):
            v1, v2 = g.other(f1, v), g.other(f2, v)
            if v1 == v2 or g.is_bridge(f1) or g.is_bridge(f2):
                continue
            e1, e2 = _bridge_at(g, v1, f1), _bridge_at(g, v2, f2)
            if e1 is None or e2 is None or e1 == e2:
                continue
            g1, g2 = g.far_side(e1, v1), g.far_side(e2, v2)
            if g.subgraph_genus(g1) != 1 or g.subgraph_genus(g2) != 1:
                continue
            removed = tuple(sorted((e1, e2)))
            heavy = _component(g, v, removed)
            heavy_genus = g.subgraph_genus(heavy, removed=removed)
            if heavy_genus < 3:
                continue
            hg = _heavy_graph(g, heavy, removed)
            l1, l2 = hg.local_edge(f1), hg.local_edge(f2)
            for emb in _embeddings(hg.graph):
                for _, c1, c2 in _double_realizations(emb, l1, l2):
                    face1, face2 = emb.faces[c1], emb.faces[c2]
                    key = (v, f1, f2, hg.global_edges(face1.edges), hg.global_edges(face2.edges))
                    if key in matches:
                        continue
                    matches[key] = HeavyCycleMatch(
                        cycle=hg.global_vertices(face1.vertices),
                        cycle_edges=hg.global_edges(face1.edges),
                        v1=v1, v2=v2, e1=e1, e2=e2, g1=g1, g2=g2,
                        g1_genus=1, g2_genus=1,
                        heavy=heavy, heavy_genus=heavy_genus, anchor_edge=f1,
                        cycle2=hg.global_vertices(face2.vertices),
                        cycle2_edges=hg.global_edges(face2.edges),
                        v=v, anchor_edge2=f2,
                    )
    return [matches[k] for k in sorted(matches, key=lambda k: (k[0], k[1], k[2], sorted(k[3]), sorted(k[4])))]


def three_faces_meet(emb: Embedding, outer: int) -> bool:
    counts: Dict[int, int] = {}
    for i in emb.bounded(outer):
        for u in emb.faces[i].vertex_set:
            counts[u] = counts.get(u, 0) + 1
    return any(c >= 3 for c in counts.values())


def double_heavy_two_loops_obstructed(g: Skeleton, match: HeavyCycleMatch) -> Optional[Obstruction]:
    if match.kind != "double-heavy":
        raise NotDoubleHeavyMatch(f"match at vertex {match.v} is {match.kind}, not double heavy", match)
    failed: List[str] = []
    if match.heavy_genus != 4:
        failed.append(f"heavy component has genus {match.heavy_genus}, not 4")
    else:
        hg = _heavy_graph(g, match.heavy, tuple(sorted((match.e1, match.e2))))
        l1 = hg.local_edge(match.anchor_edge)
        l2 = hg.local_edge(match.anchor_edge2 if match.anchor_edge2 is not None else match.anchor_edge)
        reasons = set()
        for emb in _embeddings(hg.graph):
            for outer, c1, c2 in _double_realizations(emb, l1, l2):
                if hg.global_edges(emb.faces[c1].edges) != match.cycle_edges:
                    continue
                if hg.global_edges(emb.faces[c2].edges) != match.cycle2_edges:
                    continue
                link = link_graph(emb, outer)
                n = link.number_of_nodes()
                complete = link.number_of_edges() == n * (n - 1) // 2
                meet = three_faces_meet(emb, outer)
                if not complete and meet:
                    return None
                if complete:
                    reasons.add("heavy cycles pairwise adjacent, no unit parallelogram")
                if not meet:
                    reasons.add("no three cycles of the heavy component share a vertex")
        failed = sorted(reasons) or ["no admissible embedding of the heavy component"]
    return Obstruction(ObstructionKind.DOUBLE_HEAVY_TWO_LOOPS, {**match.summary(), "failed": failed})


# --- corollary family ------------------------------------------------------------------------


def _attach(edges: List[Edge], n: int, piece: Optional[Skeleton], rng: random.Random) -> Tuple[int, int]:
    """Append a positive-genus piece with one 2-valent attachment vertex; returns (attach, n')."""
    if piece is None:
        edges.append((n, n))
        return n, n + 1
    shifted = [(a + n, b + n) for a, b in piece.edges]
    k = rng.randrange(len(shifted))
    a, b = shifted.pop(k)
    x = n + piece.n
    edges.extend(shifted + [(a, x), (x, b)])
    return x, x + 1


def generate_corollary_graphs(
    count: int = 20, seed: int = 0, genus_range: Tuple[int, int] = (8, 10)
) -> List[Skeleton]:
    """Distinct random graphs with a heavy cycle with one loop, genus in ``genus_range``."""
    from troplanar.generation import enumerate_trivalent_planar

    rng = random.Random(seed)
    library = {k: enumerate_trivalent_planar(k) for k in (2, 3, 4)}

    def piece(genus: int) -> Optional[Skeleton]:
        return None if genus == 1 else rng.choice(library[genus])

    found: Dict[str, Skeleton] = {}
    attempts = 0
    while len(found) < count and attempts < 100 * count:
        attempts += 1
        target = rng.randint(*genus_range)
        g2 = rng.randint(2, 4)
        k = rng.randint(3, 4)
        remainder = target - 2 - g2
        pieces = k - 2
        if not pieces <= remainder <= 4 * pieces:
            continue
        sizes = [1] * pieces
        for _ in range(remainder - pieces):
            open_slots = [i for i, s in enumerate(sizes) if s < 4]
            sizes[rng.choice(open_slots)] += 1

        edges: List[Edge] = [(i, (i + 1) % k) for i in range(k)]
        n = k
        for anchor, genus in [(0, 1), (1, g2)] + [(2 + i, s) for i, s in enumerate(sizes)]:
            x, n = _attach(edges, n, piece(genus), rng)
            edges.append((anchor, x))
        graph = Skeleton(n, tuple(edges))
        if graph.genus != target or not is_planar(graph):
            continue
        found.setdefault(graph.certificate, graph)
    logger.info(f"Generated {len(found)} corollary graphs in {attempts} attempts")
    return [found[c] for c in sorted(found)]
