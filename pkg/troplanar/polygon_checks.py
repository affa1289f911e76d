"""
Polygon-level checks of heavy and double heavy matches on a witness triangulation.

A match found on a skeleton is carried over to the triangulation through the
skeleton's provenance: cycles become the interior lattice points they wind
around, vertices their dual triangles and bridges the split edges they cross.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from troplanar.errors import MatchDoesNotMapToTriangulation
from troplanar.graphs import Circle, Graph, Multigraph, isomorphism
from troplanar.lattice import LatticePoint, LatticePolygon, hull_of_points, is_unit_parallelogram, orientation
from troplanar.obstructions import HeavyCycleMatch
from troplanar.skeleton import ProvenancedSkeleton, skeletonize
from troplanar.triangulation import SplitEdge, Triangle, Triangulation, decompose_along, nontrivial_split_edges

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))


@dataclass(frozen=True)
class _MappedMatch:
    ps: ProvenancedSkeleton
    vertex: Tuple[int, ...]
    edge: Tuple[int, ...]

    def edges(self, ks) -> FrozenSet[int]:
        return frozenset(self.edge[k] for k in ks)


def _edge_map(g: Multigraph, h: Multigraph, vmap: Tuple[int, ...]) -> Tuple[int, ...]:
    """Edge indices of g to distinct edge indices of h with mapped endpoints."""
    free: Dict[Tuple[int, int], List[int]] = {}
    for k, (a, b) in enumerate(h.edges):
        free.setdefault((a, b), []).append(k)
    out = []
    for a, b in g.edges:
        pair = tuple(sorted((vmap[a], vmap[b])))
        out.append(free[pair].pop(0))  # type: ignore[index]
    return tuple(out)


def _map_match(tri: Triangulation, skeleton: Graph) -> _MappedMatch:
    if isinstance(skeleton, Circle):
        raise MatchDoesNotMapToTriangulation("a circle has no heavy cycles", skeleton)
    ps = skeletonize(tri)
    if isinstance(ps.skeleton, Circle) or ps.skeleton.certificate != skeleton.certificate:
        raise MatchDoesNotMapToTriangulation(
            f"triangulation skeleton {ps.skeleton.certificate} differs from {skeleton.certificate}", tri
        )
    vmap = isomorphism(skeleton, ps.skeleton)
    assert vmap is not None
    return _MappedMatch(ps, vmap, _edge_map(skeleton, ps.skeleton, vmap))


def _dual_point(m: _MappedMatch, cycle_edges: FrozenSet[int]) -> LatticePoint:
    target = m.edges(cycle_edges)
    for z, ks in m.ps.cycle_map.items():
        if frozenset(ks) == target:
            return z
    raise MatchDoesNotMapToTriangulation(
        f"cycle on edges {sorted(cycle_edges)} is not dual to an interior lattice point", sorted(cycle_edges)
    )


def _splits(m: _MappedMatch, bridge: int) -> Tuple[SplitEdge, ...]:
    splits = m.ps.bridge_map.get(m.edge[bridge], ())
    if not splits:
        raise MatchDoesNotMapToTriangulation(f"bridge {bridge} crosses no nontrivial split edge", bridge)
    return splits


def _shared_edge(t1: Triangle, t2: Triangle) -> Optional[Tuple[LatticePoint, LatticePoint]]:
    common = set(t1.edges()) & set(t2.edges())
    return next(iter(common)) if common else None


def _other_end(seg, z: LatticePoint) -> Optional[LatticePoint]:
    if seg is None or z not in seg:
        return None
    return seg[1] if seg[0] == z else seg[0]


def _on_split_line(w: LatticePoint, splits: Tuple[SplitEdge, ...]) -> bool:
    return any(orientation(s.segment[0], s.segment[1], w) == 0 for s in splits)


def check_split_lines_meet(
    tri: Triangulation, skeleton: Graph, match: HeavyCycleMatch
) -> Optional[LatticePoint]:
    """The point where the split lines of the match's two bridges meet on the boundary, if they do."""
    m = _map_match(tri, skeleton)
    s1, s2 = _splits(m, match.e1), _splits(m, match.e2)
    candidates = sorted(
        {p for s in s1 for p in s.segment} & {p for s in s2 for p in s.segment}
    )
    for w in candidates:
        if tri.polygon.on_boundary(w):
            return w
    return None


def _heavy_points(m: _MappedMatch, skeleton: Multigraph, match: HeavyCycleMatch) -> List[LatticePoint]:
    heavy_edges = m.edges(
        k for k, (a, b) in enumerate(skeleton.edges) if a in match.heavy and b in match.heavy
    )
    return sorted(z for z, ks in m.ps.cycle_map.items() if set(ks) <= heavy_edges)


def _far_piece(tri: Triangulation, split: SplitEdge, near: LatticePoint) -> Triangulation:
    left, right = decompose_along(tri, split)
    return right if left.polygon.contains(near) else left


def validate_polygon_level(
    tri: Triangulation, skeleton: Graph, match: HeavyCycleMatch, lemmas_only: bool = False
) -> Report:
    """Check the structural conclusions of a heavy or double heavy match on a witness triangulation.

    ``lemmas_only`` keeps the shared-edge and split-line checks and drops the
    shape checks on the heavy component.

    Raises MatchDoesNotMapToTriangulation when the triangulation does not
    realize ``skeleton`` or the match's cycles and bridges have no dual in it.
    """
    m = _map_match(tri, skeleton)
    assert not isinstance(skeleton, Circle)
    polygon = tri.polygon
    triangle = m.ps.vertex_triangles
    s1, s2 = _splits(m, match.e1), _splits(m, match.e2)
    report = Report(f"{match.kind} match on cycle {list(match.cycle)}")

    if match.v is None:
        z = _dual_point(m, match.cycle_edges)
        t1, t2 = triangle[m.vertex[match.v1]], triangle[m.vertex[match.v2]]
        shared = _shared_edge(t1, t2)
        w = _other_end(shared, z)
        report.add("T1 and T2 share an edge [z,w]", w is not None, f"z={z} T1={t1} T2={t2}")
        if w is not None:
            report.add("w lies on the boundary", polygon.on_boundary(w), f"w={w}")
            report.add("split lines meet at w", _on_split_line(w, s1) and _on_split_line(w, s2), f"w={w}")
        if not lemmas_only and match.kind in ("one-loop", "two-loops"):
            points = _heavy_points(m, skeleton, match)
            hull = hull_of_points(points)
            report.add(
                "heavy component has at most three interior points",
                len(points) <= 3,
                f"{len(points)} interior points",
            )
            report.add(
                "heavy component is hyperelliptic",
                len(points) >= 1 and not isinstance(hull, LatticePolygon),
                f"interior points {[str(p) for p in points]}",
            )
        if not lemmas_only and match.kind == "one-loop" and skeleton.genus == 6 and match.g2_genus == 2:
            far = _far_piece(tri, s2[0], z)
            splits = nontrivial_split_edges(far)
            report.add(
                "genus two side has no nontrivial split",
                not splits,
                ", ".join(str(s) for s in splits),
            )
    else:
        z1 = _dual_point(m, match.cycle_edges)
        z2 = _dual_point(m, match.cycle2_edges)
        t = triangle[m.vertex[match.v]]
        t1, t2 = triangle[m.vertex[match.v1]], triangle[m.vertex[match.v2]]
        w1 = _other_end(_shared_edge(t, t1), z1)
        w2 = _other_end(_shared_edge(t, t2), z2)
        report.add("T and T1 share an edge [z1,w]", w1 is not None, f"z1={z1} T={t} T1={t1}")
        report.add("T and T2 share an edge [z2,w]", w2 is not None and w2 == w1, f"z2={z2} T={t} T2={t2}")
        if w1 is not None:
            report.add("w is a vertex of T1 and T2", w1 in t1.vertices and w1 in t2.vertices, f"w={w1}")
            report.add("split lines meet at w", _on_split_line(w1, s1) and _on_split_line(w1, s2), f"w={w1}")
        if not lemmas_only and skeleton.genus == 6:
            points = _heavy_points(m, skeleton, match)
            report.add(
                "heavy component interior hull is a unit parallelogram",
                is_unit_parallelogram(hull_of_points(points)),
                f"interior points {[str(p) for p in points]}",
            )

    logger.debug(f"{report.title}: {len(report.failures)} of {len(report.checks)} checks failed")
    return report
