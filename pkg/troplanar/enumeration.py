"""
Triangulation Enumeration
=========================

Two independent enumerators of the full triangulations of a lattice polygon:

* breadth-first search over the diagonal-flip graph, seeded by a placing
  triangulation (points inserted in lexicographic order);
* backtracking over maximal sets of pairwise non-crossing primitive segments.

Both yield each triangulation exactly once, keyed by its sorted triangle list.
"""

import logging
from collections import deque
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Set, Tuple

from shared.config import DEFAULT_BACKTRACKING_POINT_LIMIT, DEFAULT_LATTICE_POINT_LIMIT
from troplanar.errors import LimitExceeded
from troplanar.lattice import LatticePoint, LatticePolygon, is_primitive_segment, orientation
from troplanar.triangulation import Segment, Triangle, Triangulation, flip, flippable, segment

logger = logging.getLogger(__name__)


def _check_limit(polygon: LatticePolygon, limit: Optional[int], default: int) -> None:
    cap = default if limit is None else limit
    count = len(polygon.lattice_points)
    if count > cap:
        raise LimitExceeded(f"{polygon} has {count} lattice points, limit is {cap}", polygon)


def seed_triangulation(polygon: LatticePolygon) -> Triangulation:
    """Placing triangulation: insert lattice points in lexicographic order, coning each
    new point over the hull edges it sees strictly."""
    points = sorted(polygon.lattice_points)
    k = 2
    while orientation(points[0], points[1], points[k]) == 0:
        k += 1
    apex = points[k]
    triangles = [Triangle(points[i], points[i + 1], apex) for i in range(k - 1)]
    base = points[:k]
    if orientation(base[0], base[-1], apex) < 0:
        base = base[::-1]
    hull: List[LatticePoint] = base + [apex]

    for p in points[k + 1:]:
        m = len(hull)
        visible = [orientation(hull[i], hull[(i + 1) % m], p) < 0 for i in range(m)]
        start = next(i for i in range(m) if visible[i] and not visible[i - 1])
        i = start
        while visible[i % m]:
            triangles.append(Triangle(hull[i % m], hull[(i + 1) % m], p))
            i += 1
        end = i % m
        hull = [p] + [hull[(end + t) % m] for t in range((start - end) % m + 1)]

    return Triangulation(polygon, frozenset(triangles))


def flip_bfs(polygon: LatticePolygon, limit: Optional[int] = None) -> Iterator[Triangulation]:
    """Every full triangulation, in breadth-first order over the flip graph."""
    _check_limit(polygon, limit, DEFAULT_LATTICE_POINT_LIMIT)
    seed = seed_triangulation(polygon)
    seen = {seed.key}
    queue = deque([seed])
    yield seed
    while queue:
        current = queue.popleft()
        for seg in current.interior_segments:
            if not flippable(current, seg):
                continue
            neighbour = flip(current, seg)
            if neighbour.key in seen:
                continue
            seen.add(neighbour.key)
            queue.append(neighbour)
            yield neighbour
    logger.debug(f"Flip search over {polygon} visited {len(seen)} triangulations")


def _crosses(s: Segment, t: Segment) -> bool:
    a, b = s
    c, d = t
    if a in t or b in t:
        return False
    return orientation(a, b, c) * orientation(a, b, d) < 0 and orientation(c, d, a) * orientation(c, d, b) < 0


def _triangles_from_edges(points: List[LatticePoint], edges: Set[Segment]) -> List[Triangle]:
    adjacency: Dict[LatticePoint, Set[LatticePoint]] = {p: set() for p in points}
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    found = set()
    for a, b in edges:
        for c in adjacency[a] & adjacency[b]:
            if abs(orientation(a, b, c)) == 1:
                found.add(Triangle(a, b, c))
    return sorted(found)


def backtracking(polygon: LatticePolygon, limit: Optional[int] = None) -> Iterator[Triangulation]:
    """Exhaustive search over non-crossing primitive segment sets of full size."""
    _check_limit(polygon, limit, DEFAULT_BACKTRACKING_POINT_LIMIT)
    points = sorted(polygon.lattice_points)
    interior = len(polygon.interior_points)
    boundary = len(polygon.boundary_points)
    target = 3 * interior + 2 * boundary - 3

    forced: List[Segment] = []
    candidates: List[Segment] = []
    for p, q in combinations(points, 2):
        if not is_primitive_segment(p, q):
            continue
        seg = segment(p, q)
        if polygon.common_edge(p, q):
            forced.append(seg)
        else:
            candidates.append(seg)

    conflicts: List[List[int]] = [[] for _ in candidates]
    for i, j in combinations(range(len(candidates)), 2):
        if _crosses(candidates[i], candidates[j]):
            conflicts[i].append(j)
            conflicts[j].append(i)

    blocked = [0] * len(candidates)
    chosen: List[int] = []
    needed = target - len(forced)

    def search(idx: int) -> Iterator[List[int]]:
        if len(chosen) == needed:
            yield list(chosen)
            return
        if idx == len(candidates) or len(chosen) + len(candidates) - idx < needed:
            return
        if blocked[idx]:
            yield from search(idx + 1)
            return
        chosen.append(idx)
        for c in conflicts[idx]:
            blocked[c] += 1
        yield from search(idx + 1)
        for c in conflicts[idx]:
            blocked[c] -= 1
        chosen.pop()
        # leaving idx out only pays off if a later crossing segment can still take its place
        if any(c > idx and not blocked[c] for c in conflicts[idx]):
            yield from search(idx + 1)

    count = 0
    for selection in search(0):
        edges = set(forced) | {candidates[i] for i in selection}
        triangles = _triangles_from_edges(points, edges)
        count += 1
        yield Triangulation(polygon, frozenset(triangles))
    logger.debug(f"Backtracking over {polygon} produced {count} triangulations")


def enumerate_triangulations(
    polygon: LatticePolygon, limit: Optional[int] = None, strategy: str = "flip"
) -> Iterator[Triangulation]:
    if strategy == "flip":
        _check_limit(polygon, limit, DEFAULT_LATTICE_POINT_LIMIT)
        return flip_bfs(polygon, limit)
    if strategy == "backtracking":
        _check_limit(polygon, limit, DEFAULT_BACKTRACKING_POINT_LIMIT)
        return backtracking(polygon, limit)
    raise ValueError(f"Unknown enumeration strategy '{strategy}'")


def count_triangulations(polygon: LatticePolygon, strategy: str = "flip") -> int:
    return sum(1 for _ in enumerate_triangulations(polygon, strategy=strategy))


def triangulation_keys(polygon: LatticePolygon, strategy: str = "flip") -> Set[Tuple[Tuple[LatticePoint, ...], ...]]:
    return {t.key for t in enumerate_triangulations(polygon, strategy=strategy)}
