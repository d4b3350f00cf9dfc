from fractions import Fraction

from src.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, feasible_point, solve


def test_optimal():
    result = solve([1, 0], [[1, 1]], [2])
    assert result.status == OPTIMAL
    assert result.value == 2
    assert result.x == (Fraction(2), Fraction(0))


def test_infeasible_returns_farkas_certificate():
    A, b = [[1]], [-1]
    result = solve([0], A, b)
    assert result.status == INFEASIBLE
    assert not result.feasible
    y = result.farkas
    assert all(sum(y[i] * A[i][j] for i in range(len(A))) >= 0 for j in range(len(A[0])))
    assert sum(yi * bi for yi, bi in zip(y, b)) < 0


def test_infeasible_system_of_two_rows():
    A, b = [[1, 1], [1, 1]], [1, 2]
    result = feasible_point(A, b)
    assert result.status == INFEASIBLE
    y = result.farkas
    assert all(sum(y[i] * A[i][j] for i in range(2)) >= 0 for j in range(2))
    assert sum(yi * bi for yi, bi in zip(y, b)) < 0


def test_unbounded():
    assert solve([1, 0], [[1, -1]], [0]).status == UNBOUNDED


def test_redundant_rows_are_dropped():
    result = solve([1, 1], [[1, 1], [2, 2]], [3, 6])
    assert result.status == OPTIMAL and result.value == 3


def test_feasible_point():
    result = feasible_point([[1, 2, -1]], [Fraction(1, 2)])
    assert result.feasible
    x = result.x
    assert all(v >= 0 for v in x)
    assert x[0] + 2 * x[1] - x[2] == Fraction(1, 2)
