"""
Lattice Geometry
================

Exact integer geometry on the plane lattice: convex hulls, lattice point
counts, interior hulls and a normal form for lattice polygons up to affine
unimodular equivalence.

No floating point is used anywhere in this module.
"""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, List, NamedTuple, Sequence, Tuple, Union

from troplanar.errors import DegenerateInput


class LatticePoint(NamedTuple):
    x: int
    y: int

    def __add__(self, other):  # type: ignore[override]
        return LatticePoint(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return LatticePoint(self.x - other[0], self.y - other[1])

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


Vector = Tuple[int, int]
Matrix = Tuple[Tuple[int, int], Tuple[int, int]]


def orientation(a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> int:
    """Twice the signed area of the triangle abc (positive when counterclockwise)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def det(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def lattice_length(a: Sequence[int], b: Sequence[int]) -> int:
    """Number of primitive steps on the segment ab."""
    return math.gcd(b[0] - a[0], b[1] - a[1])


def primitive(v: Sequence[int]) -> Vector:
    g = math.gcd(v[0], v[1])
    if g == 0:
        raise DegenerateInput("zero vector has no primitive direction", v)
    return (v[0] // g, v[1] // g)


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def doubled_area(vertices: Sequence[Sequence[int]]) -> int:
    """Shoelace formula; positive for counterclockwise vertex order."""
    total = 0
    n = len(vertices)
    for i in range(n):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def on_segment(p: Sequence[int], a: Sequence[int], b: Sequence[int]) -> bool:
    """True if p lies on the closed segment ab."""
    if orientation(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def is_primitive_segment(a: Sequence[int], b: Sequence[int]) -> bool:
    return lattice_length(a, b) == 1


@dataclass(frozen=True)
class EmptyHull:
    """Interior hull of a polygon without interior lattice points."""


@dataclass(frozen=True)
class PointHull:
    point: LatticePoint


@dataclass(frozen=True)
class SegmentHull:
    a: LatticePoint
    b: LatticePoint


@dataclass(frozen=True)
class LatticePolygon:
    """Convex lattice polygon, vertices strictly convex and counterclockwise."""

    vertices: Tuple[LatticePoint, ...]

    def __post_init__(self):
        verts = tuple(LatticePoint(int(v[0]), int(v[1])) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        n = len(verts)
        if n < 3 or len(set(verts)) != n:
            raise DegenerateInput(f"polygon needs at least 3 distinct vertices, got {n}", verts)
        for i in range(n):
            if orientation(verts[i - 1], verts[i], verts[(i + 1) % n]) <= 0:
                raise DegenerateInput(
                    f"vertex {verts[i]} is not in strictly convex counterclockwise position", verts
                )

    def __str__(self) -> str:
        return "conv{" + ",".join(str(v) for v in self.vertices) + "}"

    def edges(self) -> List[Tuple[LatticePoint, LatticePoint]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    @cached_property
    def doubled_area(self) -> int:
        return doubled_area(self.vertices)

    @cached_property
    def lattice_points(self) -> FrozenSet[LatticePoint]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        edges = self.edges()
        found = set()
        for x in range(min(xs), max(xs) + 1):
            for y in range(min(ys), max(ys) + 1):
                if all(orientation(a, b, (x, y)) >= 0 for a, b in edges):
                    found.add(LatticePoint(x, y))
        return frozenset(found)

    @cached_property
    def boundary_points(self) -> FrozenSet[LatticePoint]:
        edges = self.edges()
        return frozenset(p for p in self.lattice_points if any(orientation(a, b, p) == 0 for a, b in edges))

    @cached_property
    def interior_points(self) -> FrozenSet[LatticePoint]:
        return self.lattice_points - self.boundary_points

    @property
    def genus(self) -> int:
        return len(self.interior_points)

    def contains(self, p: Sequence[int], strict: bool = False) -> bool:
        if strict:
            return all(orientation(a, b, p) > 0 for a, b in self.edges())
        return all(orientation(a, b, p) >= 0 for a, b in self.edges())

    def on_boundary(self, p: Sequence[int]) -> bool:
        return self.contains(p) and not self.contains(p, strict=True)

    def is_vertex(self, p: Sequence[int]) -> bool:
        return LatticePoint(p[0], p[1]) in self.vertices

    def common_edge(self, a: Sequence[int], b: Sequence[int]) -> bool:
        """True if a and b lie on one edge of the polygon."""
        return any(on_segment(a, u, v) and on_segment(b, u, v) for u, v in self.edges())


InteriorHull = Union[EmptyHull, PointHull, SegmentHull, LatticePolygon]


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolygon:
    """Andrew's monotone chain; collinear boundary points are dropped from the vertex list."""
    pts = sorted({LatticePoint(p[0], p[1]) for p in points})
    if len(pts) < 3:
        raise DegenerateInput(f"need at least 3 distinct points, got {len(pts)}", pts)

    def half(seq: Sequence[LatticePoint]) -> List[LatticePoint]:
        chain: List[LatticePoint] = []
        for p in seq:
            while len(chain) >= 2 and orientation(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(list(reversed(pts)))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("all points are collinear", pts)
    return LatticePolygon(tuple(hull))


def interior_lattice_points(polygon: LatticePolygon) -> FrozenSet[LatticePoint]:
    return polygon.interior_points


def genus(polygon: LatticePolygon) -> int:
    return polygon.genus


def hull_of_points(points: Iterable[LatticePoint]) -> InteriorHull:
    pts = sorted(set(points))
    if not pts:
        return EmptyHull()
    if len(pts) == 1:
        return PointHull(pts[0])
    if all(orientation(pts[0], pts[1], p) == 0 for p in pts[2:]):
        return SegmentHull(pts[0], pts[-1])
    return convex_hull(pts)


def interior_hull(polygon: LatticePolygon) -> InteriorHull:
    """Convex hull of the interior lattice points, with explicit degenerate variants."""
    return hull_of_points(polygon.interior_points)


def is_hyperelliptic(polygon: LatticePolygon) -> bool:
    return not isinstance(interior_hull(polygon), LatticePolygon)


def is_unit_parallelogram(hull: InteriorHull) -> bool:
    if not isinstance(hull, LatticePolygon) or len(hull.vertices) != 4:
        return False
    a, b, c, d = hull.vertices
    if b - a != c - d:
        return False
    if abs(det(b - a, d - a)) != 1:
        return False
    return len(hull.lattice_points) == 4


def apply(matrix: Matrix, p: Sequence[int], shift: Sequence[int] = (0, 0)) -> LatticePoint:
    (m00, m01), (m10, m11) = matrix
    return LatticePoint(m00 * p[0] + m01 * p[1] + shift[0], m10 * p[0] + m11 * p[1] + shift[1])


def transform(polygon: LatticePolygon, matrix: Matrix, shift: Sequence[int] = (0, 0)) -> LatticePolygon:
    """Image of a polygon under x -> Ux + t with det U = +-1."""
    (m00, m01), (m10, m11) = matrix
    d = m00 * m11 - m01 * m10
    if d not in (1, -1):
        raise DegenerateInput(f"matrix {matrix} is not unimodular", matrix)
    image = [apply(matrix, v, shift) for v in polygon.vertices]
    if d == -1:
        image.reverse()
    return LatticePolygon(tuple(image))


def _canonical_candidates(vertices: Sequence[LatticePoint]) -> List[Tuple[int, ...]]:
    n = len(vertices)
    keys = []
    for i in range(n):
        a = vertices[i]
        dx, dy = primitive(vertices[(i + 1) % n] - a)
        _, p, q = extended_gcd(dx, dy)
        frame: Matrix = ((p, q), (-dy, dx))
        moved = [apply(frame, v - a) for v in vertices]
        prev = moved[i - 1]
        s = -(prev.x // prev.y)
        sheared = [LatticePoint(v.x + s * v.y, v.y) for v in moved]
        min_x = min(v.x for v in sheared)
        min_y = min(v.y for v in sheared)
        ordered = sheared[i:] + sheared[:i]
        keys.append(tuple(c for v in ordered for c in (v.x - min_x, v.y - min_y)))
    return keys


def normal_form(polygon: LatticePolygon) -> LatticePolygon:
    """Canonical representative of the affine unimodular orbit of a polygon.

    Every directed edge (of the polygon and of its mirror image) is moved to
    start at the origin pointing along (1, 0) with the polygon above it; the
    remaining shear freedom is fixed by putting the preceding vertex in the
    strip 0 <= x < y. After translating to the first quadrant the
    lexicographically smallest vertex sequence wins.
    """
    verts = list(polygon.vertices)
    mirrored = [LatticePoint(-v.x, v.y) for v in reversed(verts)]
    best = min(_canonical_candidates(verts) + _canonical_candidates(mirrored))
    return LatticePolygon(tuple(LatticePoint(best[k], best[k + 1]) for k in range(0, len(best), 2)))


def polygon_key(polygon: LatticePolygon) -> str:
    """Serialized vertex list, e.g. ``0,0;1,0;0,1``."""
    return ";".join(f"{v.x},{v.y}" for v in polygon.vertices)


def pick_consistent(polygon: LatticePolygon) -> bool:
    return polygon.doubled_area == 2 * len(polygon.interior_points) + len(polygon.boundary_points) - 2
