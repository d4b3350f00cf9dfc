"""Exact linear algebra over the rationals, backed by sympy."""
from fractions import Fraction
from typing import List, Optional, Sequence

from sympy import Matrix, Rational, zeros

try:
    from .errors import InputError
except ImportError:
    from errors import InputError


def as_fraction(value) -> Fraction:
    """Convert a sympy number (or int/Fraction) into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return Matrix([[Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x for x in row] for row in rows])


def columns(rows: Sequence[Sequence[int]], cols: Sequence[int]) -> Matrix:
    if not rows:
        return zeros(0, len(cols))
    return Matrix([[row[c] for c in cols] for row in rows])


def column_rank(rows: Sequence[Sequence[int]], cols: Sequence[int]) -> int:
    if not cols:
        return 0
    return columns(rows, cols).rank()


def determinant(rows: Sequence[Sequence]) -> int:
    return int(to_matrix(rows).det(method="bareiss"))


def kernel_vector(rows: Sequence[Sequence[int]], cols: Sequence[int]) -> Optional[List[Fraction]]:
    """One nonzero kernel vector of the column submatrix, or None if the columns are independent."""
    basis = columns(rows, cols).nullspace()
    if not basis:
        return None
    return [as_fraction(x) for x in basis[0]]


def inverse(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    m = to_matrix(rows)
    if m.rows != m.cols or m.det() == 0:
        raise InputError("Singular system", {"shape": [m.rows, m.cols]})
    inv = m.inv()
    return [[as_fraction(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)]


def row_space_projector(rows: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    """Orthogonal projector Mᵀ(MMᵀ)⁻¹M onto the row space of a full-row-rank matrix."""
    m = to_matrix(rows)
    p = m.T * (m * m.T).inv() * m
    return [[as_fraction(p[i, j]) for j in range(p.cols)] for i in range(p.rows)]


def in_row_space(rows: Sequence[Sequence[int]], u: Sequence) -> bool:
    m = to_matrix(rows)
    return m.col_join(to_matrix([list(u)])).rank() == m.rank()


def mat_vec(rows: Sequence[Sequence], x: Sequence) -> List[Fraction]:
    return [sum((Fraction(a) * Fraction(b) for a, b in zip(row, x)), Fraction(0)) for row in rows]
