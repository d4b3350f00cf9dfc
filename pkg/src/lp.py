"""Exact linear programming: two-phase tableau simplex over Fractions with Bland's rule.

Solves   max c·x   s.t.   A x = b,  x >= 0.
On infeasibility the Phase-I duals give a Farkas certificate y with yᵀA >= 0 and yᵀb < 0.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

try:
    from .logger import logger
except ImportError:
    from logger import logger

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[Tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None
    farkas: Optional[Tuple[Fraction, ...]] = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


class SimplexTableau:
    """Dense tableau; every row carries its right-hand side in the last slot."""

    def __init__(self, A: List[List[Fraction]], b: List[Fraction]):
        self.rows = [list(r) + [rhs] for r, rhs in zip(A, b)]
        self.basis: List[int] = []

    def pivot(self, i: int, j: int) -> None:
        row = self.rows[i]
        piv = row[j]
        self.rows[i] = row = [v / piv for v in row]
        for k, other in enumerate(self.rows):
            if k != i and other[j] != 0:
                f = other[j]
                self.rows[k] = [a - f * p for a, p in zip(other, row)]
        self.basis[i] = j

    def value(self, c: Sequence[Fraction]) -> Fraction:
        return sum((c[self.basis[i]] * self.rows[i][-1] for i in range(len(self.rows))), Fraction(0))

    def duals(self, c: Sequence[Fraction], cols: Sequence[int]) -> List[Fraction]:
        """y_i = c_Bᵀ B⁻¹ e_i, read off columns that started as the identity."""
        return [
            sum((c[self.basis[r]] * self.rows[r][col] for r in range(len(self.rows))), Fraction(0))
            for col in cols
        ]

    def bland(self, c: Sequence[Fraction], allowed: Sequence[int]) -> str:
        while True:
            in_basis = set(self.basis)
            entering = None
            for j in allowed:
                if j in in_basis:
                    continue
                reduced = c[j] - sum(
                    (c[self.basis[i]] * self.rows[i][j] for i in range(len(self.rows))), Fraction(0)
                )
                if reduced > 0:
                    entering = j
                    break
            if entering is None:
                return OPTIMAL
            try:
                _, _, i = min(
                    (self.rows[i][-1] / self.rows[i][entering], self.basis[i], i)
                    for i in range(len(self.rows))
                    if self.rows[i][entering] > 0
                )
            except ValueError:
                return UNBOUNDED
            self.pivot(i, entering)


def solve(c: Sequence, A_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    """Maximise c·x over {x >= 0 : A_eq x = b_eq}, exactly."""
    k = len(c)
    m = len(A_eq)
    c = [Fraction(v) for v in c]
    signs = [1 if Fraction(b_eq[i]) >= 0 else -1 for i in range(m)]
    A = [[Fraction(v) * signs[i] for v in A_eq[i]] for i in range(m)]
    b = [Fraction(b_eq[i]) * signs[i] for i in range(m)]

    # Phase I: artificials k..k+m-1 start as the basis
    tableau = SimplexTableau(
        [A[i] + [Fraction(1) if t == i else Fraction(0) for t in range(m)] for i in range(m)], b
    )
    tableau.basis = [k + i for i in range(m)]
    phase1 = [Fraction(0)] * k + [Fraction(-1)] * m
    tableau.bland(phase1, range(k + m))
    if tableau.value(phase1) < 0:
        y = tableau.duals(phase1, [k + i for i in range(m)])
        farkas = tuple(y[i] * signs[i] for i in range(m))
        logger.debug("LP infeasible", rows=m, cols=k)
        return LPResult(INFEASIBLE, farkas=farkas)

    # Drive zero-valued artificials out; drop rows that are redundant
    keep = []
    for i in range(len(tableau.rows)):
        if tableau.basis[i] >= k:
            j = next((j for j in range(k) if tableau.rows[i][j] != 0), None)
            if j is None:
                continue
            tableau.pivot(i, j)
        keep.append(i)
    tableau.rows = [tableau.rows[i] for i in keep]
    tableau.basis = [tableau.basis[i] for i in keep]

    phase2 = c + [Fraction(0)] * m
    status = tableau.bland(phase2, range(k))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * k
    for i, j in enumerate(tableau.basis):
        x[j] = tableau.rows[i][-1]
    return LPResult(OPTIMAL, x=tuple(x), value=sum((ci * xi for ci, xi in zip(c, x)), Fraction(0)))


def feasible_point(A_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    """Phase I only: any x >= 0 with A x = b, or a Farkas certificate."""
    return solve([0] * (len(A_eq[0]) if A_eq else 0), A_eq, b_eq)
