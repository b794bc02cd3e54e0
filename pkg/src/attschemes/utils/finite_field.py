"""
Table-driven arithmetic over the finite fields F_q used to build schemes.
"""

import logging
from typing import Dict, List, Sequence, Tuple

from attschemes.exceptions import FieldNotSupportedError, InvariantViolation
from attschemes.mods.exactnum import prime_power_decomposition

logger = logging.getLogger(__name__)

# Monic irreducible (Conway) moduli, coefficients listed from degree 0 upward.
IRREDUCIBLE_MODULI: Dict[int, Tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 4, 1),
    27: (1, 2, 0, 1),
}

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9, 16, 25, 27)

Row = Tuple[int, ...]


class FieldContext:
    """
    Arithmetic tables for F_q.

    Elements are the integers 0..q-1; the integer sum_k c_k p^k stands for the
    polynomial sum_k c_k t^k modulo the field's irreducible modulus.
    """

    def __init__(self, q: int):
        """
        Build the tables for F_q.

        Args:
            q: Field order

        Raises:
            FieldNotSupportedError: If q is not in the built-in table
        """
        if q not in SUPPORTED_ORDERS:
            raise FieldNotSupportedError(f"field not in table: q={q} (supported: {', '.join(map(str, SUPPORTED_ORDERS))})")
        self.q = q
        self.p, self.h = prime_power_decomposition(q)
        self.modulus = IRREDUCIBLE_MODULI.get(q, (0, 1))
        self.add_table = [[self._encode(self._add_digits(a, b)) for b in range(q)] for a in range(q)]
        self.mul_table = [[self._encode(self._mul_digits(a, b)) for b in range(q)] for a in range(q)]
        self.neg = [self._encode([(-c) % self.p for c in self._digits(a)]) for a in range(q)]
        self.inv = [0] * q
        for a in range(1, q):
            inverses = [b for b in range(1, q) if self.mul_table[a][b] == 1]
            if len(inverses) != 1:
                raise InvariantViolation(f"element {a} of F_{q} has no unique inverse; modulus {self.modulus} is not irreducible")
            self.inv[a] = inverses[0]
        logger.debug("Built arithmetic tables for F_%d (p=%d, h=%d)", q, self.p, self.h)

    def _digits(self, value: int) -> List[int]:
        digits = []
        for _ in range(self.h):
            digits.append(value % self.p)
            value //= self.p
        return digits

    def _encode(self, digits: Sequence[int]) -> int:
        value = 0
        for digit in reversed(digits):
            value = value * self.p + digit
        return value

    def _add_digits(self, a: int, b: int) -> List[int]:
        return [(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))]

    def _mul_digits(self, a: int, b: int) -> List[int]:
        x, y = self._digits(a), self._digits(b)
        product = [0] * (2 * self.h - 1)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                product[i + j] = (product[i + j] + xi * yj) % self.p
        # Reduce with the monic modulus t^h = -sum_{k<h} c_k t^k
        for degree in range(len(product) - 1, self.h - 1, -1):
            lead = product[degree]
            if lead:
                product[degree] = 0
                for k in range(self.h):
                    product[degree - self.h + k] = (product[degree - self.h + k] - lead * self.modulus[k]) % self.p
        return product[: self.h]

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def rref(self, rows: Sequence[Sequence[int]]) -> Tuple[Tuple[Row, ...], Tuple[int, ...]]:
        """
        Reduced row-echelon form of a matrix over F_q.

        Args:
            rows: Matrix rows of field elements

        Returns:
            (nonzero RREF rows, pivot columns)
        """
        matrix = [list(row) for row in rows]
        if not matrix:
            return (), ()
        width = len(matrix[0])
        add, mul, neg, inv = self.add_table, self.mul_table, self.neg, self.inv
        pivots: List[int] = []
        rank = 0
        for col in range(width):
            pivot_row = next((r for r in range(rank, len(matrix)) if matrix[r][col]), None)
            if pivot_row is None:
                continue
            matrix[rank], matrix[pivot_row] = matrix[pivot_row], matrix[rank]
            scale = inv[matrix[rank][col]]
            matrix[rank] = [mul[scale][v] for v in matrix[rank]]
            for r, row in enumerate(matrix):
                factor = row[col]
                if r != rank and factor:
                    f = neg[factor]
                    pivot = matrix[rank]
                    matrix[r] = [add[v][mul[f][pv]] for v, pv in zip(row, pivot)]
            pivots.append(col)
            rank += 1
            if rank == len(matrix):
                break
        return tuple(tuple(row) for row in matrix[:rank]), tuple(pivots)

    def rank(self, rows: Sequence[Sequence[int]]) -> int:
        """Rank of a matrix over F_q (forward elimination only)."""
        matrix = [list(row) for row in rows if any(row)]
        if not matrix:
            return 0
        width = len(matrix[0])
        add, mul, neg, inv = self.add_table, self.mul_table, self.neg, self.inv
        rank = 0
        for col in range(width):
            pivot_row = next((r for r in range(rank, len(matrix)) if matrix[r][col]), None)
            if pivot_row is None:
                continue
            matrix[rank], matrix[pivot_row] = matrix[pivot_row], matrix[rank]
            pivot = matrix[rank]
            scale = inv[pivot[col]]
            for r in range(rank + 1, len(matrix)):
                factor = matrix[r][col]
                if factor:
                    f = neg[mul[factor][scale]]
                    matrix[r] = [add[v][mul[f][pv]] for v, pv in zip(matrix[r], pivot)]
            rank += 1
            if rank == len(matrix):
                break
        return rank
