"""
Exact dual simplex over the rationals, used as a feasibility oracle for
systems ``A x >= b`` with ``x >= 0`` and integer data.

The system is written as ``-A x + s = -b`` with the slacks as the starting
basis. With a zero objective that basis is dual feasible, so Bland's dual
rule either drives every right-hand side non-negative (feasible) or finds a
row with no negative entry (infeasible).
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence

logger = logging.getLogger(__name__)

MAX_PIVOTS = 100000


class SimplexTableau:
    def __init__(self, rows: Sequence[Sequence[int]], rhs: Sequence[int], n: int):
        self.m = len(rows)
        self.n = n
        # columns 0..n-1 are the structural variables, n..n+m-1 the slacks
        self.A: List[List[Fraction]] = []
        for i, row in enumerate(rows):
            line = [Fraction(-v) for v in row] + [Fraction(0)] * self.m
            line[n + i] = Fraction(1)
            self.A.append(line)
        self.b: List[Fraction] = [Fraction(-v) for v in rhs]
        self.basis: List[int] = [n + i for i in range(self.m)]
        self.pivots = 0

    def pivot(self, i: int, j: int) -> None:
        piv = self.A[i][j]
        row = [v / piv for v in self.A[i]]
        self.A[i] = row
        self.b[i] /= piv
        for k in range(self.m):
            if k == i:
                continue
            f = self.A[k][j]
            if f == 0:
                continue
            other = self.A[k]
            self.A[k] = [a - f * r for a, r in zip(other, row)]
            self.b[k] -= f * self.b[i]
        self.basis[i] = j
        self.pivots += 1

    def bland_dual(self) -> str:
        """Run to termination; returns ``'feasible'`` or ``'infeasible'``."""
        while True:
            negative = [(self.basis[k], k) for k in range(self.m) if self.b[k] < 0]
            if not negative:
                return "feasible"
            _, i = min(negative)
            try:
                j = min(j for j in range(self.n + self.m) if self.A[i][j] < 0)
            except ValueError:
                return "infeasible"
            self.pivot(i, j)
            if self.pivots > MAX_PIVOTS:
                raise RuntimeError(f"dual simplex exceeded {MAX_PIVOTS} pivots")

    def solution(self) -> List[Fraction]:
        x = [Fraction(0)] * self.n
        for k, var in enumerate(self.basis):
            if var < self.n:
                x[var] = self.b[k]
        return x


def feasible_point(rows: Sequence[Sequence[int]], rhs: Sequence[int], n: int) -> Optional[List[Fraction]]:
    """A point ``x >= 0`` with ``rows @ x >= rhs``, or None if there is none."""
    if not rows:
        return [Fraction(0)] * n
    tableau = SimplexTableau(rows, rhs, n)
    status = tableau.bland_dual()
    logger.debug(f"Dual simplex: {status} after {tableau.pivots} pivots ({len(rows)} rows, {n} columns)")
    if status == "infeasible":
        return None
    return tableau.solution()
