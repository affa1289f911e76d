"""
Unimodular Triangulations
=========================

Full triangulations of lattice polygons: validation, the dual graph, split
edges, decomposition along a split edge and diagonal flips.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from troplanar.errors import (
    DegenerateInput,
    MissingLatticeVertex,
    NotASplitEdge,
    NotATiling,
    NotFaceToFace,
    NotUnimodular,
)
from troplanar.lattice import LatticePoint, LatticePolygon, convex_hull, on_segment, orientation

logger = logging.getLogger(__name__)

Segment = Tuple[LatticePoint, LatticePoint]


def segment(a: Sequence[int], b: Sequence[int]) -> Segment:
    p, q = LatticePoint(a[0], a[1]), LatticePoint(b[0], b[1])
    return (p, q) if p <= q else (q, p)


@dataclass(frozen=True, order=True)
class Triangle:
    """Lattice triangle; vertices are stored sorted so equal triangles compare equal."""

    a: LatticePoint
    b: LatticePoint
    c: LatticePoint

    def __post_init__(self):
        a, b, c = sorted(LatticePoint(p[0], p[1]) for p in (self.a, self.b, self.c))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @classmethod
    def of(cls, *points: Sequence[int]) -> "Triangle":
        return cls(*points)  # type: ignore[arg-type]

    @property
    def vertices(self) -> Tuple[LatticePoint, LatticePoint, LatticePoint]:
        return (self.a, self.b, self.c)

    @property
    def doubled_area(self) -> int:
        return abs(orientation(self.a, self.b, self.c))

    def edges(self) -> List[Segment]:
        return [segment(self.a, self.b), segment(self.b, self.c), segment(self.a, self.c)]

    def opposite(self, seg: Segment) -> LatticePoint:
        for v in self.vertices:
            if v not in seg:
                return v
        raise DegenerateInput(f"{seg} is not an edge of {self}", seg)

    def ccw(self) -> Tuple[LatticePoint, LatticePoint, LatticePoint]:
        if orientation(self.a, self.b, self.c) > 0:
            return (self.a, self.b, self.c)
        return (self.a, self.c, self.b)

    def __str__(self) -> str:
        return "[" + ",".join(str(v) for v in self.vertices) + "]"


@dataclass(frozen=True)
class SplitEdge:
    segment: Segment
    left_genus: int
    right_genus: int

    @property
    def nontrivial(self) -> bool:
        return self.left_genus >= 1 and self.right_genus >= 1

    def __str__(self) -> str:
        a, b = self.segment
        return f"{a}-{b} ({self.left_genus}|{self.right_genus})"


@dataclass(frozen=True)
class DualGraph:
    """One node per triangle, one arc per interior segment, one ray stub per boundary segment."""

    nodes: Tuple[Triangle, ...]
    arcs: Tuple[Tuple[int, int, Segment], ...]
    rays: Tuple[Tuple[int, Segment], ...]

    def degree(self, node: int) -> int:
        return sum((i == node) + (j == node) for i, j, _ in self.arcs)


@dataclass(frozen=True)
class Triangulation:
    polygon: LatticePolygon
    triangles: FrozenSet[Triangle] = field(default_factory=frozenset)

    @cached_property
    def edge_index(self) -> Dict[Segment, Tuple[Triangle, ...]]:
        index: Dict[Segment, List[Triangle]] = {}
        for t in sorted(self.triangles):
            for e in t.edges():
                index.setdefault(e, []).append(t)
        return {e: tuple(ts) for e, ts in index.items()}

    @property
    def interior_segments(self) -> List[Segment]:
        return sorted(e for e, ts in self.edge_index.items() if len(ts) == 2)

    @property
    def boundary_segments(self) -> List[Segment]:
        return sorted(e for e, ts in self.edge_index.items() if len(ts) == 1)

    @cached_property
    def vertices(self) -> FrozenSet[LatticePoint]:
        return frozenset(v for t in self.triangles for v in t.vertices)

    @property
    def genus(self) -> int:
        return self.polygon.genus

    def sorted_triangles(self) -> List[Triangle]:
        return sorted(self.triangles)

    def neighbours(self, t: Triangle) -> List[Triangle]:
        out = []
        for e in t.edges():
            out.extend(o for o in self.edge_index[e] if o != t)
        return out

    def triangle_degree(self, t: Triangle) -> int:
        """Number of interior segments of t: 1, 2 or 3."""
        return sum(len(self.edge_index[e]) == 2 for e in t.edges())

    @cached_property
    def key(self) -> Tuple[Tuple[LatticePoint, ...], ...]:
        return tuple(t.vertices for t in self.sorted_triangles())

    def serialize(self) -> str:
        return "|".join(";".join(f"{v.x},{v.y}" for v in t.vertices) for t in self.sorted_triangles())

    def __len__(self) -> int:
        return len(self.triangles)


def _separated(t1: Triangle, t2: Triangle) -> bool:
    """True if some edge line of t1 or t2 separates their interiors."""
    for s, o in ((t1, t2), (t2, t1)):
        a, b, c = s.ccw()
        for p, q in ((a, b), (b, c), (c, a)):
            if all(orientation(p, q, v) <= 0 for v in o.vertices):
                return True
    return False


def validate(polygon: LatticePolygon, triangles: Iterable[Triangle]) -> Triangulation:
    """Check that the triangles form a full unimodular triangulation of the polygon."""
    tris = sorted(set(triangles))
    for t in tris:
        if t.doubled_area == 0:
            raise NotUnimodular(f"triangle {t} is degenerate", t)
        for v in t.vertices:
            if not polygon.contains(v):
                raise NotATiling(f"vertex {v} of {t} lies outside the polygon", t)

    for t1, t2 in combinations(tris, 2):
        for s, o in ((t1, t2), (t2, t1)):
            for v in s.vertices:
                for p, q in o.edges():
                    if v != p and v != q and on_segment(v, p, q):
                        raise NotFaceToFace(f"{s} meets {o} inside the edge {p}-{q}", (t1, t2))

    total = sum(t.doubled_area for t in tris)
    if total != polygon.doubled_area:
        raise NotATiling(f"triangles cover doubled area {total}, polygon has {polygon.doubled_area}", tris)
    for t1, t2 in combinations(tris, 2):
        if not _separated(t1, t2):
            raise NotATiling(f"triangles {t1} and {t2} overlap", (t1, t2))

    for t in tris:
        if t.doubled_area != 1:
            raise NotUnimodular(f"triangle {t} has doubled area {t.doubled_area}", t)

    used = {v for t in tris for v in t.vertices}
    for p in sorted(polygon.lattice_points):
        if p not in used:
            raise MissingLatticeVertex(f"lattice point {p} is not a vertex", p)

    tri = Triangulation(polygon, frozenset(tris))
    logger.debug(f"Validated triangulation with {len(tris)} triangles of {polygon}")
    return tri


def from_triangles(triangles: Iterable[Triangle], polygon: Optional[LatticePolygon] = None) -> Triangulation:
    """Validate triangles over their own hull when no polygon is given."""
    tris = list(triangles)
    if polygon is None:
        polygon = convex_hull(v for t in tris for v in t.vertices)
    return validate(polygon, tris)


def dual_graph(tri: Triangulation) -> DualGraph:
    nodes = tuple(tri.sorted_triangles())
    position = {t: i for i, t in enumerate(nodes)}
    arcs = []
    rays = []
    for e, ts in sorted(tri.edge_index.items()):
        if len(ts) == 2:
            arcs.append((position[ts[0]], position[ts[1]], e))
        else:
            rays.append((position[ts[0]], e))
    return DualGraph(nodes, tuple(arcs), tuple(rays))


def _side_counts(polygon: LatticePolygon, seg: Segment) -> Tuple[int, int]:
    a, b = seg
    left = sum(orientation(a, b, z) > 0 for z in polygon.interior_points)
    right = sum(orientation(a, b, z) < 0 for z in polygon.interior_points)
    return left, right


def split_edges(tri: Triangulation) -> List[SplitEdge]:
    """Interior segments with both endpoints on the boundary, annotated with side genera."""
    out = []
    for e in tri.interior_segments:
        if tri.polygon.on_boundary(e[0]) and tri.polygon.on_boundary(e[1]):
            left, right = _side_counts(tri.polygon, e)
            out.append(SplitEdge(e, left, right))
    return out


def nontrivial_split_edges(tri: Triangulation) -> List[SplitEdge]:
    return [s for s in split_edges(tri) if s.nontrivial]


def split_edge_at(tri: Triangulation, a: Sequence[int], b: Sequence[int]) -> SplitEdge:
    seg = segment(a, b)
    for s in split_edges(tri):
        if s.segment == seg:
            return s
    raise NotASplitEdge(f"{seg[0]}-{seg[1]} is not a split edge", seg)


def decompose_along(tri: Triangulation, split: SplitEdge) -> Tuple[Triangulation, Triangulation]:
    """Sub-triangulations on the left and right closed sides of a split edge."""
    if split.segment not in {s.segment for s in split_edges(tri)}:
        raise NotASplitEdge(f"{split.segment} is not a split edge of the triangulation", split)
    a, b = split.segment
    a3 = (3 * a.x, 3 * a.y)
    b3 = (3 * b.x, 3 * b.y)
    left, right = [], []
    for t in tri.sorted_triangles():
        centroid = (sum(v.x for v in t.vertices), sum(v.y for v in t.vertices))
        (left if orientation(a3, b3, centroid) > 0 else right).append(t)
    pieces = []
    for part in (left, right):
        hull = convex_hull(v for t in part for v in t.vertices)
        pieces.append(validate(hull, part))
    return pieces[0], pieces[1]


def flippable(tri: Triangulation, seg: Segment) -> bool:
    ts = tri.edge_index.get(seg, ())
    if len(ts) != 2:
        return False
    a, b = seg
    c = ts[0].opposite(seg)
    d = ts[1].opposite(seg)
    # strictly convex quadrilateral a, c, b, d
    return orientation(c, d, a) * orientation(c, d, b) < 0 and orientation(a, b, c) * orientation(a, b, d) < 0


def flip(tri: Triangulation, seg: Segment) -> Triangulation:
    """Replace the diagonal seg of a strictly convex quadrilateral by the other diagonal."""
    if not flippable(tri, seg):
        raise DegenerateInput(f"segment {seg[0]}-{seg[1]} cannot be flipped", seg)
    t1, t2 = tri.edge_index[seg]
    a, b = seg
    c = t1.opposite(seg)
    d = t2.opposite(seg)
    triangles = set(tri.triangles)
    triangles -= {t1, t2}
    triangles |= {Triangle(c, d, a), Triangle(c, d, b)}
    return Triangulation(tri.polygon, frozenset(triangles))


def parse_serialization(text: str) -> List[Triangle]:
    triangles = []
    for chunk in text.strip().split("|"):
        pts = [tuple(int(c) for c in p.split(",")) for p in chunk.split(";")]
        triangles.append(Triangle.of(*pts))
    return triangles
