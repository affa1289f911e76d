"""
Regularity
==========

A full triangulation is regular when some height function on its lattice
points lifts it to the lower faces of a convex polytope. For every interior
segment shared by triangles (a, b, c) and (a, b, d) the lifted d must lie
strictly above the plane through the lifted a, b, c. Strictness is
normalized to a margin of 1, which scaling makes equivalent.

Heights are gauge-fixed to 0 on the vertices of one triangle; the convex
lifting then dominates that affine piece, so all heights may be taken
non-negative.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from shared.config import DEFAULT_FM_MAX_VARIABLES, DEFAULT_FM_ROW_LIMIT
from troplanar import fourier_motzkin, simplex
from troplanar.lattice import LatticePoint, det
from troplanar.triangulation import Segment, Triangle, Triangulation

logger = logging.getLogger(__name__)

BACKENDS = ("auto", "simplex", "fm")


@dataclass(frozen=True)
class FoldConstraint:
    """``sum(coefficients[p] * h(p)) >= 1`` for one interior segment."""

    segment: Segment
    coefficients: Tuple[Tuple[LatticePoint, int], ...]


@dataclass(frozen=True)
class LiftingSystem:
    points: Tuple[LatticePoint, ...]
    gauge: Tuple[LatticePoint, LatticePoint, LatticePoint]
    constraints: Tuple[FoldConstraint, ...]

    @property
    def variables(self) -> List[LatticePoint]:
        return [p for p in self.points if p not in self.gauge]

    def matrix(self) -> Tuple[List[List[int]], List[int]]:
        column = {p: j for j, p in enumerate(self.variables)}
        rows = []
        for fold in self.constraints:
            row = [0] * len(column)
            for p, c in fold.coefficients:
                if p in column:
                    row[column[p]] += c
            rows.append(row)
        return rows, [1] * len(rows)


@dataclass(frozen=True)
class RegularityResult:
    regular: bool
    heights: Optional[Dict[LatticePoint, Fraction]] = field(default=None, compare=False)
    backend: str = "simplex"

    def __bool__(self) -> bool:
        return self.regular


def fold_constraint(t: Triangle, d: LatticePoint, seg: Segment) -> FoldConstraint:
    """d written in integer barycentric coordinates of the unimodular triangle t."""
    a, b, c = t.vertices
    area = det(b - a, c - a)
    lam = det(d - a, c - a) // area
    mu = det(b - a, d - a) // area
    coeffs: Dict[LatticePoint, int] = {d: 1}
    for p, w in ((a, 1 - lam - mu), (b, lam), (c, mu)):
        coeffs[p] = coeffs.get(p, 0) - w
    return FoldConstraint(seg, tuple(sorted((p, w) for p, w in coeffs.items() if w)))


def lifting_system(tri: Triangulation) -> LiftingSystem:
    folds = []
    for seg in tri.interior_segments:
        t1, t2 = tri.edge_index[seg]
        folds.append(fold_constraint(t1, t2.opposite(seg), seg))
    gauge = tri.sorted_triangles()[0].vertices
    return LiftingSystem(tuple(sorted(tri.vertices)), gauge, tuple(folds))


def verify_heights(tri: Triangulation, heights: Mapping[LatticePoint, Fraction]) -> bool:
    """Every fold holds with margin at least 1 (exact substitution)."""
    for seg in tri.interior_segments:
        t1, t2 = tri.edge_index[seg]
        fold = fold_constraint(t1, t2.opposite(seg), seg)
        if sum(w * Fraction(heights[p]) for p, w in fold.coefficients) < 1:
            return False
    return True


def _solve(system: LiftingSystem, backend: str, fm_max_variables: int, fm_row_limit: int) -> Tuple[Optional[List[Fraction]], str]:
    rows, rhs = system.matrix()
    n = len(system.variables)
    if backend == "fm" or (backend == "auto" and n <= fm_max_variables):
        try:
            return fourier_motzkin.feasible_point(rows, rhs, n, fm_row_limit), "fm"
        except fourier_motzkin.RowLimitExceeded as e:
            if backend == "fm":
                raise
            logger.debug(f"Fourier-Motzkin gave up ({e}); using simplex")
    return simplex.feasible_point(rows, rhs, n), "simplex"


def is_regular(
    tri: Triangulation,
    backend: str = "auto",
    fm_max_variables: int = DEFAULT_FM_MAX_VARIABLES,
    fm_row_limit: int = DEFAULT_FM_ROW_LIMIT,
) -> RegularityResult:
    """Decide regularity exactly; witness heights are verified before returning."""
    if backend not in BACKENDS:
        raise ValueError(f"Unknown regularity backend '{backend}', expected one of {BACKENDS}")
    system = lifting_system(tri)
    solution, used = _solve(system, backend, fm_max_variables, fm_row_limit)
    if solution is None:
        return RegularityResult(False, None, used)

    heights = {p: Fraction(0) for p in system.gauge}
    heights.update(zip(system.variables, solution))
    if not verify_heights(tri, heights):
        raise RuntimeError(f"{used} backend returned heights that fail the fold constraints")
    return RegularityResult(True, heights, used)
