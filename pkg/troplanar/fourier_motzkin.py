"""
Fourier-Motzkin elimination with exact integer rows and back-substitution.

Rows are ``(coefficients, rhs)`` meaning ``coefficients . x >= rhs``. Each
elimination step combines every row with a positive coefficient on the
chosen variable with every row with a negative one; rows are reduced by
their content (gcd) and duplicates collapse to the tightest right-hand side.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

Row = Tuple[Tuple[int, ...], int]


class RowLimitExceeded(Exception):
    """Elimination grew past the configured row budget."""


def _normalize(coeffs: Sequence[int], rhs: int) -> Row:
    g = abs(rhs)
    for c in coeffs:
        g = math.gcd(g, c)
    if g > 1:
        return tuple(c // g for c in coeffs), rhs // g
    return tuple(coeffs), rhs


def _tighten(rows: List[Row]) -> List[Row]:
    best: Dict[Tuple[int, ...], int] = {}
    for coeffs, rhs in rows:
        if coeffs not in best or rhs > best[coeffs]:
            best[coeffs] = rhs
    return sorted(best.items())


class FourierMotzkin:
    def __init__(self, rows: Sequence[Row], n: int, row_limit: int = 4000):
        self.n = n
        self.row_limit = row_limit
        self.rows: List[Row] = _tighten([(tuple(c), r) for c, r in rows])
        self.history: List[Tuple[int, List[Row]]] = []

    def _choose(self, remaining: List[int]) -> int:
        def cost(k: int) -> Tuple[int, int]:
            pos = sum(1 for c, _ in self.rows if c[k] > 0)
            neg = sum(1 for c, _ in self.rows if c[k] < 0)
            return (pos * neg - pos - neg, k)

        return min(remaining, key=cost)

    def eliminate(self, k: int) -> bool:
        """Project out variable k; returns False if a contradiction ``0 >= r > 0`` appears."""
        involved = [r for r in self.rows if r[0][k] != 0]
        kept = [r for r in self.rows if r[0][k] == 0]
        pos = [r for r in involved if r[0][k] > 0]
        neg = [r for r in involved if r[0][k] < 0]
        combined: List[Row] = []
        for pc, pr in pos:
            for nc, nr in neg:
                alpha, beta = pc[k], -nc[k]
                coeffs = tuple(beta * a + alpha * b for a, b in zip(pc, nc))
                combined.append((coeffs, beta * pr + alpha * nr))
        self.history.append((k, involved))
        new_rows = []
        for coeffs, rhs in kept + combined:
            if not any(coeffs):
                if rhs > 0:
                    return False
                continue
            new_rows.append(_normalize(coeffs, rhs))
        self.rows = _tighten(new_rows)
        if len(self.rows) > self.row_limit:
            raise RowLimitExceeded(f"{len(self.rows)} rows after eliminating x{k}")
        return True

    def solve(self) -> Optional[List[Fraction]]:
        remaining = list(range(self.n))
        while remaining:
            k = self._choose(remaining)
            remaining.remove(k)
            if not self.eliminate(k):
                logger.debug(f"Fourier-Motzkin: contradiction after eliminating x{k}")
                return None
        for coeffs, rhs in self.rows:
            if rhs > 0:
                return None
        return self._back_substitute()

    def _back_substitute(self) -> List[Fraction]:
        x: List[Optional[Fraction]] = [None] * self.n
        for k, rows in reversed(self.history):
            lower: Optional[Fraction] = None
            upper: Optional[Fraction] = None
            for coeffs, rhs in rows:
                rest = sum((Fraction(c) * x[j] for j, c in enumerate(coeffs) if j != k and c and x[j] is not None), Fraction(0))
                bound = (Fraction(rhs) - rest) / coeffs[k]
                if coeffs[k] > 0:
                    lower = bound if lower is None else max(lower, bound)
                else:
                    upper = bound if upper is None else min(upper, bound)
            if lower is not None:
                x[k] = lower
            elif upper is not None:
                x[k] = upper
            else:
                x[k] = Fraction(0)
        return [v if v is not None else Fraction(0) for v in x]


def feasible_point(rows: Sequence[Sequence[int]], rhs: Sequence[int], n: int, row_limit: int = 4000) -> Optional[List[Fraction]]:
    """A point with ``rows @ x >= rhs`` or None; raises RowLimitExceeded past the budget."""
    solver = FourierMotzkin([(tuple(r), b) for r, b in zip(rows, rhs)], n, row_limit)
    return solver.solve()
