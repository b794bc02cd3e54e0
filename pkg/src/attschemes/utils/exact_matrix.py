"""
Exact rational matrices backed by numpy integer arrays.

An ``ExactMatrix`` is an integer array together with one positive common
denominator. Products are exact: float64 BLAS is used only while every partial
sum is provably below 2**53, int64 below 2**62, Python integers beyond that.
"""

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from attschemes.exceptions import ArithmeticDomainError

_FLOAT_EXACT_BOUND = 2**53
_INT64_BOUND = 2**62


def _max_abs(array: np.ndarray) -> int:
    if array.size == 0:
        return 0
    if array.dtype == object:
        return max(abs(int(v)) for v in array.flat)
    return int(np.abs(array).max())


def _compact(array: np.ndarray) -> np.ndarray:
    """Store as int64 whenever the entries allow it."""
    if array.dtype == object and _max_abs(array) < _INT64_BOUND:
        return array.astype(np.int64)
    if array.dtype != object and array.dtype != np.int64:
        return array.astype(np.int64)
    return array


def _widen(array: np.ndarray, bound: int) -> np.ndarray:
    return array.astype(object) if bound >= _INT64_BOUND else array


def int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Exact integer matrix product.

    Args:
        a: Integer array (int64 or object)
        b: Integer array (int64 or object)

    Returns:
        Exact product as int64 or object array
    """
    inner = a.shape[-1] if a.ndim else 1
    bound = _max_abs(a) * _max_abs(b) * max(inner, 1)
    if bound < _FLOAT_EXACT_BOUND:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    if bound < _INT64_BOUND:
        return a.astype(np.int64) @ b.astype(np.int64)
    return _compact(np.dot(a.astype(object), b.astype(object)))


class ExactMatrix:
    """Rational matrix num / den with integer numpy storage."""

    __slots__ = ("num", "den")

    def __init__(self, num: np.ndarray, den: int = 1):
        if den == 0:
            raise ArithmeticDomainError("zero denominator")
        num = np.asarray(num)
        if den < 0:
            num, den = -num, -den
        num = _compact(num)
        g = math.gcd(_gcd_of(num), den)
        if g > 1:
            num = num // g
            den //= g
        self.num = num
        self.den = int(den)

    @classmethod
    def identity(cls, size: int) -> "ExactMatrix":
        return cls(np.eye(size, dtype=np.int64))

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "ExactMatrix":
        return cls(np.zeros((rows, rows if cols is None else cols), dtype=np.int64))

    @classmethod
    def from_fractions(cls, rows: Sequence[Sequence[Fraction]]) -> "ExactMatrix":
        values = [[Fraction(v) for v in row] for row in rows]
        den = reduce(_lcm, (v.denominator for row in values for v in row), 1)
        num = np.array([[v.numerator * (den // v.denominator) for v in row] for row in values], dtype=object)
        return cls(num, den)

    @classmethod
    def diagonal(cls, values: Sequence[Fraction]) -> "ExactMatrix":
        size = len(values)
        fractions = [Fraction(v) for v in values]
        den = reduce(_lcm, (v.denominator for v in fractions), 1)
        num = np.zeros((size, size), dtype=object)
        for index, value in enumerate(fractions):
            num[index, index] = value.numerator * (den // value.denominator)
        return cls(num, den)

    @classmethod
    def from_class_values(cls, classes: np.ndarray, values: Sequence[Fraction]) -> "ExactMatrix":
        """Matrix whose entry (x, y) is values[classes[x, y]]."""
        fractions = [Fraction(v) for v in values]
        den = reduce(_lcm, (v.denominator for v in fractions), 1)
        table = _compact(np.array([v.numerator * (den // v.denominator) for v in fractions], dtype=object))
        return cls(table[classes], den)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.num.shape

    def _aligned(self, other: "ExactMatrix") -> Tuple[np.ndarray, np.ndarray, int]:
        den = _lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        bound = max(_max_abs(self.num) * fa, _max_abs(other.num) * fb, fa, fb) * 2
        a = _widen(self.num, bound) * fa
        b = _widen(other.num, bound) * fb
        return a, b, den

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        a, b, den = self._aligned(other)
        return ExactMatrix(a + b, den)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        a, b, den = self._aligned(other)
        return ExactMatrix(a - b, den)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(-self.num, self.den)

    def scale(self, factor) -> "ExactMatrix":
        factor = Fraction(factor)
        if factor == 0:
            return ExactMatrix(np.zeros_like(self.num, dtype=np.int64))
        bound = max(_max_abs(self.num), 1) * abs(factor.numerator)
        return ExactMatrix(_widen(self.num, bound) * factor.numerator, self.den * factor.denominator)

    def __mul__(self, factor) -> "ExactMatrix":
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(int_matmul(self.num, other.num), self.den * other.den)

    def schur(self, other: "ExactMatrix") -> "ExactMatrix":
        """Entrywise product."""
        bound = _max_abs(self.num) * _max_abs(other.num)
        return ExactMatrix(_widen(self.num, bound) * _widen(other.num, bound), self.den * other.den)

    def scale_columns(self, values: Sequence[Fraction]) -> "ExactMatrix":
        """Right multiplication by diag(values) without forming the diagonal matrix."""
        diag = ExactMatrix.diagonal(values)
        column = _compact(np.diagonal(diag.num).copy())
        bound = _max_abs(self.num) * _max_abs(column)
        return ExactMatrix(_widen(self.num, bound) * _widen(column, bound)[None, :], self.den * diag.den)

    @property
    def T(self) -> "ExactMatrix":  # pylint: disable=invalid-name
        return ExactMatrix(self.num.T.copy(), self.den)

    def is_zero(self) -> bool:
        return not np.any(self.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.den == other.den and self.num.shape == other.num.shape and bool(np.array_equal(self.num, other.num))

    __hash__ = None

    def entry(self, row: int, col: int) -> Fraction:
        return Fraction(int(self.num[row, col]), self.den)

    def trace(self) -> Fraction:
        return Fraction(int(sum(int(v) for v in np.diagonal(self.num))), self.den)

    def max_abs_entry(self) -> Fraction:
        return Fraction(_max_abs(self.num), self.den)

    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.num))

    def to_fractions(self) -> List[List[Fraction]]:
        return [[Fraction(int(v), self.den) for v in row] for row in self.num]

    def rank(self) -> int:
        """Exact rank by fraction-free (Bareiss) elimination."""
        return bareiss_rank(self.num)

    def __repr__(self) -> str:
        return f"ExactMatrix(shape={self.shape}, den={self.den})"


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b) if a and b else max(a, b)


def _gcd_of(array: np.ndarray) -> int:
    if array.size == 0:
        return 0
    if array.dtype == object:
        return reduce(math.gcd, (abs(int(v)) for v in array.flat), 0)
    return int(np.gcd.reduce(np.abs(array).ravel()))


def commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b - b @ a


def anticommutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b + b @ a


def linear_combination(terms: Iterable[Tuple[Fraction, ExactMatrix]]) -> ExactMatrix:
    """Sum of coefficient * matrix over the given terms (at least one)."""
    result: Optional[ExactMatrix] = None
    for coefficient, matrix in terms:
        term = matrix.scale(coefficient)
        result = term if result is None else result + term
    if result is None:
        raise ValueError("empty linear combination")
    return result


def bareiss_rank(num: np.ndarray) -> int:
    """
    Rank of an integer matrix by Bareiss fraction-free elimination.

    Entries are promoted to Python integers so intermediate values cannot
    overflow.
    """
    matrix = [[int(v) for v in row] for row in num]
    if not matrix:
        return 0
    rows, cols = len(matrix), len(matrix[0])
    rank = 0
    previous = 1
    for col in range(cols):
        pivot_row = next((r for r in range(rank, rows) if matrix[r][col]), None)
        if pivot_row is None:
            continue
        matrix[rank], matrix[pivot_row] = matrix[pivot_row], matrix[rank]
        pivot = matrix[rank][col]
        for r in range(rank + 1, rows):
            factor = matrix[r][col]
            row = matrix[r]
            top = matrix[rank]
            matrix[r] = [(pivot * row[c] - factor * top[c]) // previous for c in range(cols)]
        previous = pivot
        rank += 1
        if rank == rows:
            break
    return rank


def solve_rational(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """
    Solve a square rational system exactly by Gauss-Jordan elimination.

    Returns:
        The unique solution, or None when the system is singular
    """
    size = len(matrix)
    augmented = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(size):
        pivot_row = next((r for r in range(col, size) if augmented[r][col] != 0), None)
        if pivot_row is None:
            return None
        augmented[col], augmented[pivot_row] = augmented[pivot_row], augmented[col]
        pivot = augmented[col][col]
        augmented[col] = [v / pivot for v in augmented[col]]
        for r in range(size):
            if r != col and augmented[r][col] != 0:
                factor = augmented[r][col]
                augmented[r] = [v - factor * pv for v, pv in zip(augmented[r], augmented[col])]
    return [augmented[r][size] for r in range(size)]
