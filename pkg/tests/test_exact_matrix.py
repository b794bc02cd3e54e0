from fractions import Fraction

import numpy as np
import pytest

from attschemes.exceptions import ArithmeticDomainError
from attschemes.utils.exact_matrix import ExactMatrix, anticommutator, bareiss_rank, commutator, int_matmul, linear_combination, solve_rational


def test_normalizes_common_factors():
    matrix = ExactMatrix(np.array([[2, 4], [6, 8]]), 2)
    assert matrix.den == 1
    assert matrix == ExactMatrix(np.array([[1, 2], [3, 4]]))
    assert ExactMatrix(np.zeros((2, 2), dtype=np.int64), 5) == ExactMatrix.zeros(2)


def test_zero_denominator():
    with pytest.raises(ArithmeticDomainError):
        ExactMatrix(np.eye(2, dtype=np.int64), 0)


def test_arithmetic():
    a = ExactMatrix.from_fractions([[Fraction(1, 2), 0], [0, Fraction(1, 3)]])
    b = ExactMatrix.from_fractions([[0, 1], [1, 0]])
    assert (a + a).entry(0, 0) == 1
    assert (a - a).is_zero()
    assert (a @ b).entry(0, 1) == Fraction(1, 2)
    assert (b @ a).entry(0, 1) == Fraction(1, 3)
    assert commutator(a, b).entry(0, 1) == Fraction(1, 6)
    assert anticommutator(a, b).entry(1, 0) == Fraction(5, 6)
    assert a.scale(6) == ExactMatrix.diagonal([3, 2])
    assert a.trace() == Fraction(5, 6)
    assert a.schur(b).is_zero()
    assert b.T == b


def test_scale_columns_matches_diagonal_product():
    a = ExactMatrix.from_fractions([[1, 2], [3, 4]])
    values = [Fraction(1, 2), Fraction(-3)]
    assert a.scale_columns(values) == a @ ExactMatrix.diagonal(values)


def test_from_class_values():
    classes = np.array([[0, 1], [1, 0]])
    matrix = ExactMatrix.from_class_values(classes, [Fraction(1, 4), Fraction(3, 4)])
    assert matrix.to_fractions() == [[Fraction(1, 4), Fraction(3, 4)], [Fraction(3, 4), Fraction(1, 4)]]


def test_int_matmul_large_entries_stay_exact():
    big = np.array([[2**40, 1], [1, 2**40]], dtype=np.int64)
    product = int_matmul(big, big)
    assert int(product[0, 0]) == 2**80 + 1
    assert int(product[0, 1]) == 2**41


def test_linear_combination():
    unit = ExactMatrix.identity(2)
    assert linear_combination([(Fraction(1, 2), unit), (Fraction(1, 2), unit)]) == unit
    with pytest.raises(ValueError):
        linear_combination([])


def test_ranks():
    assert bareiss_rank(np.array([[1, 2], [2, 4]])) == 1
    assert ExactMatrix.identity(3).rank() == 3
    assert ExactMatrix.zeros(3).rank() == 0


def test_solve_rational():
    solution = solve_rational([[2, 1], [1, 3]], [3, 5])
    assert solution == [Fraction(4, 5), Fraction(7, 5)]
    assert solve_rational([[1, 2], [2, 4]], [1, 2]) is None
