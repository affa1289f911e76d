"""
Candidate trivalent planar graphs per genus.

The primary strategy grows genus g from genus g - 1: either subdivide two
edges (possibly the same one twice) and join the new vertices, or subdivide
one edge and hang a bridged loop on it. Every connected trivalent graph of
genus >= 3 arises this way from one of genus one less, and deleting an edge
keeps planarity, so filtering at each level is complete.

The cross-check strategy fills a degree-3 edge multiset on 2g - 2 labelled
vertices by backtracking and dedups by certificate.
"""

import logging
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

from troplanar.errors import OutOfRange
from troplanar.graphs import Edge, Skeleton, is_planar

logger = logging.getLogger(__name__)

MIN_GENUS = 2
MAX_GENUS = 6
STRATEGIES = ("induction", "backtracking")

THETA = Skeleton(2, ((0, 1), (0, 1), (0, 1)))
DUMBBELL = Skeleton(2, ((0, 0), (0, 1), (1, 1)))


def _subdivide(edges: List[Edge], k: int, x: int) -> List[Edge]:
    a, b = edges[k]
    return edges[:k] + edges[k + 1:] + [(a, x), (x, b)]


def edge_insertions(g: Skeleton) -> Iterator[Skeleton]:
    """Join new vertices placed on edges i <= j."""
    m = len(g.edges)
    x, y = g.n, g.n + 1
    for i in range(m):
        for j in range(i, m):
            a, b = g.edges[i]
            rest = [e for k, e in enumerate(g.edges) if k not in (i, j)]
            if i == j:
                new = rest + [(a, x), (x, y), (y, b), (x, y)]
            else:
                c, d = g.edges[j]
                new = rest + [(a, x), (x, b), (c, y), (y, d), (x, y)]
            yield Skeleton(g.n + 2, tuple(new))


def loop_insertions(g: Skeleton) -> Iterator[Skeleton]:
    x, y = g.n, g.n + 1
    for k in range(len(g.edges)):
        new = _subdivide(list(g.edges), k, x) + [(x, y), (y, y)]
        yield Skeleton(g.n + 2, tuple(new))


def grow(graphs: Tuple[Skeleton, ...]) -> Tuple[Skeleton, ...]:
    found: Dict[str, Skeleton] = {}
    rejected = set()
    for g in graphs:
        for child in list(edge_insertions(g)) + list(loop_insertions(g)):
            cert = child.certificate
            if cert in found or cert in rejected:
                continue
            if is_planar(child):
                found[cert] = child
            else:
                rejected.add(cert)
    return tuple(found[c] for c in sorted(found))


@lru_cache(maxsize=None)
def _by_induction(genus: int) -> Tuple[Skeleton, ...]:
    if genus == MIN_GENUS:
        return tuple(sorted((THETA, DUMBBELL), key=lambda s: s.certificate))
    graphs = grow(_by_induction(genus - 1))
    logger.info(f"Genus {genus}: {len(graphs)} trivalent planar graphs")
    return graphs


def _by_backtracking(genus: int) -> Tuple[Skeleton, ...]:
    n = 2 * genus - 2
    target = 3 * genus - 3
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    found: Dict[str, Skeleton] = {}
    degree = [0] * n
    chosen: List[Edge] = []

    def search(start: int) -> None:
        if len(chosen) == target:
            if all(d == 3 for d in degree):
                g = Skeleton(n, tuple(chosen))
                if g.is_connected:
                    cert = g.certificate
                    if cert not in found and is_planar(g):
                        found[cert] = g
            return
        for idx in range(start, len(pairs)):
            i, j = pairs[idx]
            # edges come in lexicographic order, so vertices below i are final
            if any(degree[v] != 3 for v in range(i)):
                return
            step = 2 if i == j else 1
            if degree[i] + step > 3 or (i != j and degree[j] + 1 > 3):
                continue
            degree[i] += step
            if i != j:
                degree[j] += 1
            chosen.append((i, j))
            search(idx)
            chosen.pop()
            degree[i] -= step
            if i != j:
                degree[j] -= 1

    search(0)
    return tuple(found[c] for c in sorted(found))


def enumerate_trivalent_planar(genus: int, strategy: str = "induction") -> List[Skeleton]:
    """Connected trivalent planar multigraphs of the given genus, one per isomorphism
    class, sorted by certificate."""
    if not MIN_GENUS <= genus <= MAX_GENUS:
        raise OutOfRange(f"genus must be between {MIN_GENUS} and {MAX_GENUS}, got {genus}", genus)
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown generation strategy '{strategy}', expected one of {STRATEGIES}")
    if strategy == "backtracking":
        return list(_by_backtracking(genus))
    return list(_by_induction(genus))
