"""
Polygon corpus.

Low genus polygons are generated exhaustively: every convex lattice polygon
with k + 1 lattice points is the hull of one with k points plus a new vertex,
so the corpus grows breadth-first from the unit triangle, keeping one normal
form per orbit. A new vertex must lie at lattice distance one from every edge
it sees, which bounds the candidates on each outer parallel line.

Higher genus evidence comes from curated ``.poly`` files and witness ``.tri``
files in the corpus directory (``TROPLANAR_CORPUS`` or the bundled one).
"""

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from shared.config import CORPUS_ENV_VAR, DEFAULT_CORPUS_MAX_POINTS
from troplanar.formats import read_polygon, read_triangulation
from troplanar.lattice import (
    LatticePoint,
    LatticePolygon,
    convex_hull,
    det,
    extended_gcd,
    normal_form,
    polygon_key,
    primitive,
)
from troplanar.triangulation import Triangulation

logger = logging.getLogger(__name__)

FIXTURES = Path(__file__).resolve().parent / "fixtures"
BUNDLED_CORPUS = FIXTURES / "corpus"
FIGURE_WITNESSES = ("fig1.tri", "fig10.tri")
UNIT_TRIANGLE = LatticePolygon((LatticePoint(0, 0), LatticePoint(1, 0), LatticePoint(0, 1)))


@dataclass(frozen=True)
class Witness:
    polygon: LatticePolygon
    triangulation: Triangulation
    source: Optional[str] = None


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _candidates(polygon: LatticePolygon) -> Iterator[LatticePoint]:
    """Points at lattice distance one beyond some edge and at most one beyond every other."""
    edges = [(a, primitive(b - a)) for a, b in polygon.edges()]
    for a, d in edges:
        _, s, t = extended_gcd(d[0], d[1])
        q0 = LatticePoint(a.x + t, a.y - s)
        lo: Optional[int] = None
        hi: Optional[int] = None
        feasible = True
        for a_j, d_j in edges:
            # outward distance of q0 + k*d from edge j is c + slope*k
            c = det(q0 - a_j, d_j)
            slope = det(d, d_j)
            if slope == 0:
                feasible = feasible and c <= 1
            elif slope > 0:
                bound = (1 - c) // slope
                hi = bound if hi is None else min(hi, bound)
            else:
                bound = _ceil_div(c - 1, -slope)
                lo = bound if lo is None else max(lo, bound)
        if not feasible or lo is None or hi is None:
            continue
        for k in range(lo, hi + 1):
            yield LatticePoint(q0.x + k * d[0], q0.y + k * d[1])


def grow(polygon: LatticePolygon) -> List[LatticePolygon]:
    """Normal forms of the polygons with exactly one more lattice point."""
    target = len(polygon.lattice_points) + 1
    found: Dict[str, LatticePolygon] = {}
    for p in set(_candidates(polygon)):
        bigger = convex_hull(list(polygon.vertices) + [p])
        if len(bigger.lattice_points) == target:
            nf = normal_form(bigger)
            found.setdefault(polygon_key(nf), nf)
    return [found[k] for k in sorted(found)]


@lru_cache(maxsize=None)
def _levels(max_points: int, max_genus: int) -> Tuple[Tuple[LatticePolygon, ...], ...]:
    levels = [(normal_form(UNIT_TRIANGLE),)]
    for count in range(4, max_points + 1):
        found: Dict[str, LatticePolygon] = {}
        for polygon in levels[-1]:
            for bigger in grow(polygon):
                if bigger.genus <= max_genus:
                    found.setdefault(polygon_key(bigger), bigger)
        levels.append(tuple(found[k] for k in sorted(found)))
        logger.debug(f"{len(found)} polygons with {count} lattice points")
    return tuple(levels)


def polygon_corpus(genus: Optional[int] = None, max_points: int = DEFAULT_CORPUS_MAX_POINTS) -> List[LatticePolygon]:
    """Every lattice polygon with at most ``max_points`` lattice points, one per unimodular orbit."""
    levels = _levels(max_points, genus if genus is not None else max_points)
    out = [p for level in levels for p in level if genus is None or p.genus == genus]
    logger.info(f"Polygon corpus: {len(out)} polygons (genus {genus}, <= {max_points} points)")
    return out


def corpus_dir(override: Optional[Path] = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.getenv(CORPUS_ENV_VAR)
    return Path(env).expanduser() if env else BUNDLED_CORPUS


def curated_polygons(genus: Optional[int] = None, directory: Optional[Path] = None) -> List[LatticePolygon]:
    """Polygons from ``*.poly`` files, plus the figure polygons for the bundled corpus."""
    root = corpus_dir(directory)
    paths = sorted(root.glob("*.poly"))
    if root == BUNDLED_CORPUS:
        paths += [FIXTURES / "fig1.poly", FIXTURES / "fig10.poly"]
    out = []
    for path in paths:
        polygon = read_polygon(path)
        if genus is None or polygon.genus == genus:
            out.append(polygon)
    return out


def load_witnesses(directory: Optional[Path] = None) -> List[Witness]:
    root = corpus_dir(directory)
    paths = sorted(root.glob("*.tri"))
    if root == BUNDLED_CORPUS:
        paths += [FIXTURES / name for name in FIGURE_WITNESSES]
    witnesses = []
    for path in paths:
        tri = read_triangulation(path)
        witnesses.append(Witness(tri.polygon, tri, str(path)))
    logger.debug(f"Loaded {len(witnesses)} witness triangulations from {root}")
    return witnesses


def polygons_for(
    genus: int, max_points: int = DEFAULT_CORPUS_MAX_POINTS, directory: Optional[Path] = None
) -> List[LatticePolygon]:
    """Generated polygons of the given genus followed by curated ones not already present."""
    seen = set()
    out = []
    for polygon in polygon_corpus(genus, max_points) + curated_polygons(genus, directory):
        key = polygon_key(normal_form(polygon))
        if key not in seen:
            seen.add(key)
            out.append(polygon)
    return out
