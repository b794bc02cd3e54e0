"""
Univariate families K_k, E_k, Q_k and verification of their recurrence,
difference and contiguity relations.

K_k(N, ell; q; x) is the affine q-Krawtchouk family normalized by
(q^-ell; q)_k [N k] q^(ell k); E_k is the dual q-Hahn family normalized by
q^(k^2) [m k] [N-m k]; Q_k is its q-Hahn dual. Each family is zero outside
its degree range.
"""

import logging
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from attschemes.data_models.residual import RelationResidual
from attschemes.exceptions import ArithmeticDomainError
from attschemes.mods.exactnum import Number, QPowers, QValue, phi_3_2, q_binomial, q_pochhammer

logger = logging.getLogger(__name__)

QLike = Union[QValue, int, Fraction]


def k_value(k: int, big_n: int, qp: QPowers, x: int, ell_cap: Optional[int]) -> Number:
    """
    K_k(N, ell; q; x) for a base given by ``qp``.

    Args:
        k: Degree
        big_n: N
        qp: Powers of q and q^ell
        x: Variable (non-negative integer)
        ell_cap: ell when integral, None when ell is unbounded (limit path)

    Returns:
        The polynomial value, zero outside 0 <= k <= min(N, ell)
    """
    q = qp.q
    if k < 0 or k > big_n or (ell_cap is not None and k > ell_cap):
        return q * 0
    prefactor = q_pochhammer(qp(0, -1), q, k) * q_binomial(big_n, k, q) * qp(0, k)
    series = phi_3_2(qp(-k), q * 0, qp(-x), qp(0, -1), qp(-big_n), q, q, order=min(k, x))
    return prefactor * series


def e_value(k: int, big_n: int, m: int, qp: QPowers, x: int) -> Number:
    """E_k(N, m; q; x); zero outside 0 <= k <= min(N-m, m)."""
    q = qp.q
    if k < 0 or k > min(big_n - m, m):
        return q * 0
    prefactor = qp(k * k) * q_binomial(m, k, q) * q_binomial(big_n - m, k, q)
    series = phi_3_2(qp(-k), qp(x - big_n - 1), qp(-x), qp(-m), qp(m - big_n), q, q, order=min(k, x))
    return prefactor * series


def q_value(k: int, big_n: int, m: int, qp: QPowers, x: int) -> Number:
    """Q_k(N, m; q; x); zero outside 0 <= k <= min(N-m, m)."""
    q = qp.q
    if k < 0 or k > min(big_n - m, m):
        return q * 0
    prefactor = q_binomial(big_n, k, q) - q_binomial(big_n, k - 1, q)
    series = phi_3_2(qp(-x), qp(k - big_n - 1), qp(-k), qp(-m), qp(m - big_n), q, q, order=min(k, x))
    return prefactor * series


def k_poly(k: int, big_n: int, ell: int, q: QLike, x: int) -> Fraction:
    """Exact K_k(N, ell; q; x)."""
    return k_value(k, big_n, QPowers.exact(q, ell), x, ell)


def e_poly(k: int, big_n: int, m: int, q: QLike, x: int) -> Fraction:
    """Exact E_k(N, m; q; x)."""
    return e_value(k, big_n, m, QPowers.exact(q, 0), x)


def q_poly(k: int, big_n: int, m: int, q: QLike, x: int) -> Fraction:
    """Exact Q_k(N, m; q; x)."""
    return q_value(k, big_n, m, QPowers.exact(q, 0), x)


class Coefficient:
    """A relation coefficient held as numerator/denominator until its target is known."""

    __slots__ = ("num", "den")

    def __init__(self, num: Fraction, den: Fraction = Fraction(1)):
        self.num = num
        self.den = den

    def value(self) -> Fraction:
        if self.den == 0:
            raise ArithmeticDomainError("singular denominator in relation coefficient")
        return self.num / self.den

    @property
    def vanishes(self) -> bool:
        return self.num == 0


Term = Tuple[Coefficient, bool, Callable[[], Fraction]]


def combine(relation: str, index: Tuple, lhs: Fraction, terms: Iterable[Term]) -> List[RelationResidual]:
    """
    Evaluate the right-hand side of a relation and return its residual records.

    Each term is (coefficient, target_defined, value_thunk). Terms whose target
    is undefined are dropped, and a "<relation>:boundary" residual is emitted
    for any of them whose coefficient fails to vanish.
    """
    rhs = Fraction(0)
    residuals: List[RelationResidual] = []
    for coefficient, defined, evaluate in terms:
        if not defined:
            if not coefficient.vanishes:
                residuals.append(RelationResidual(f"{relation}:boundary", index, coefficient.num, Fraction(0)))
            continue
        value = coefficient.value()
        if value:
            rhs += value * evaluate()
    residuals.insert(0, RelationResidual(relation, index, lhs, rhs))
    return residuals


def _sign(eps: int) -> str:
    return f"{eps:+d}" if eps else "0"


def verify_K_relations(big_n: int, ell: int, q: QLike) -> List[RelationResidual]:  # pylint: disable=invalid-name
    """
    Check the contiguity recurrences (all three shifts of N) and the difference
    equation of K_j(N, ell; q; s) at every in-range index.

    Returns:
        Residual records sorted by (relation, index)
    """
    qp = QPowers.exact(q, ell)
    one = Fraction(1)

    def kk(j: int, shifted_n: int, s: int) -> Fraction:
        return k_value(j, shifted_n, qp, s, ell)

    def a_zero_plus(j: int) -> Fraction:
        return (qp(j + 1) - 1) * qp(j - big_n, -1)

    def a_zero_minus(j: int) -> Fraction:
        return (1 - qp(j - big_n - 1)) * (1 - qp(j - 1, -1))

    def coefficients(eps: int, j: int) -> Sequence[Tuple[int, Fraction]]:
        if eps == 1:
            return ((1, (qp(j + 1) - 1) * qp(-big_n)), (0, qp(1) - qp(j - big_n)))
        if eps == 0:
            return ((1, a_zero_plus(j)), (0, -a_zero_plus(j - 1) - a_zero_minus(j + 1)), (-1, a_zero_minus(j)))
        return ((-1, qp(0, 1) - qp(j - 1)), (0, qp(j)))

    def eigenvalue(eps: int, s: int) -> Fraction:
        if eps == 1:
            return (qp(-s) - qp(-big_n - 1)) * qp(1, 1)
        if eps == 0:
            return qp(-s) - 1
        return one

    top = min(big_n, ell)
    residuals: List[RelationResidual] = []
    for eps in (1, 0, -1):
        relation = f"crecK({_sign(eps)})"
        for j in range(top + 1):
            for s in range(min(big_n, big_n + eps, ell) + 1):
                lhs = eigenvalue(eps, s) * kk(j, big_n, s)
                terms = [
                    (Coefficient(coefficient), True, lambda jj=j + shift, ss=s, nn=big_n + eps: kk(jj, nn, ss))
                    for shift, coefficient in coefficients(eps, j)
                ]
                residuals.extend(combine(relation, (eps, j, s), lhs, terms))

    for j in range(top + 1):
        theta = qp(-j) - 1
        for s in range(top + 1):
            b_plus = (1 - qp(s - big_n)) * (1 - qp(s, -1))
            b_minus = -qp(s - big_n - 1, -1) * (1 - qp(s))
            terms = [
                (Coefficient(b_plus), True, lambda jj=j, ss=s + 1: kk(jj, big_n, ss)),
                (Coefficient(-b_plus - b_minus), True, lambda jj=j, ss=s: kk(jj, big_n, ss)),
                (Coefficient(b_minus), s >= 1, lambda jj=j, ss=s - 1: kk(jj, big_n, ss)),
            ]
            residuals.extend(combine("diffK", (j, s), theta * kk(j, big_n, s), terms))

    logger.debug("K relations N=%d ell=%d: %d residuals", big_n, ell, len(residuals))
    return sorted(residuals, key=RelationResidual.sort_key)


def verify_E_relations(big_n: int, m: int, q: QLike) -> List[RelationResidual]:  # pylint: disable=invalid-name
    """
    Check the three-term recurrence and the contiguity difference equations
    of E_i(N, m; q; r) at every 0 <= i, r <= min(N-m, m).

    Raises:
        ArithmeticDomainError: If a coefficient denominator vanishes at a defined target
    """
    qp = QPowers.exact(q, 0)

    def ee(i: int, shifted_n: int, shifted_m: int, r: int) -> Fraction:
        return e_value(i, shifted_n, shifted_m, qp, r)

    def a_plus(i: int) -> Fraction:
        return (1 - qp(i + 1)) ** 2 * qp(-big_n - 1)

    def a_minus(i: int) -> Fraction:
        return (1 - qp(i - 1 - big_n + m)) * (1 - qp(i - m - 1))

    top = min(big_n - m, m)
    residuals: List[RelationResidual] = []
    for i in range(top + 1):
        for r in range(top + 1):
            big_lambda = (qp(-r) - 1) * (1 - qp(r - big_n - 1))
            terms = [
                (Coefficient(a_plus(i)), True, lambda ii=i + 1, rr=r: ee(ii, big_n, m, rr)),
                (Coefficient(-a_plus(i - 1) - a_minus(i + 1)), True, lambda ii=i, rr=r: ee(ii, big_n, m, rr)),
                (Coefficient(a_minus(i)), True, lambda ii=i - 1, rr=r: ee(ii, big_n, m, rr)),
            ]
            residuals.extend(combine("recE", (i, r), big_lambda * ee(i, big_n, m, r), terms))

    for eps in (1, 0, -1):
        relation = f"cdiffE({_sign(eps)})"
        shifted_n, shifted_m = big_n + eps, m + eps
        target_top = min(big_n - m, shifted_m)
        for i in range(top + 1):
            theta = {1: Fraction(1), 0: qp(-i) - 1, -1: qp(m - i) - 1}[eps]
            for r in range(top + 1):
                terms = [
                    (coefficient, 0 <= r + shift <= target_top, lambda ii=i, rr=r + shift: ee(ii, shifted_n, shifted_m, rr))
                    for shift, coefficient in _cdiff_e_coefficients(qp, eps, big_n, m, r)
                ]
                residuals.extend(combine(relation, (eps, i, r), theta * ee(i, big_n, m, r), terms))

    logger.debug("E relations N=%d m=%d: %d residuals", big_n, m, len(residuals))
    return sorted(residuals, key=RelationResidual.sort_key)


def _cdiff_e_coefficients(qp: QPowers, eps: int, big_n: int, m: int, r: int) -> List[Tuple[int, Coefficient]]:
    base = 1 - qp(2 * r - big_n - 1)
    if eps == 1:
        return [
            (1, Coefficient(1 - qp(r + m - big_n), base)),
            (0, Coefficient(-qp(2 * r - big_n - 1) * (1 - qp(m + 1 - r)), base)),
        ]
    if eps == -1:
        return [
            (-1, Coefficient(-(1 - qp(r - big_n + m - 1)) * (1 - qp(r)), base)),
            (0, Coefficient((1 - qp(r - big_n - 1)) * (qp(m) - qp(r)), base)),
        ]
    plus = Coefficient((1 - qp(r - big_n + m)) * (1 - qp(r - big_n - 1)) * (1 - qp(r - m)), base * (1 - qp(2 * r - big_n)))
    minus = Coefficient(-qp(r - big_n - 1) * (1 - qp(r)) * (1 - qp(r - m - 1)) * (1 - qp(r - big_n + m - 1)), base * (1 - qp(2 * r - big_n - 2)))
    top = min(big_n - m, m)
    plus_value = plus.value() if r + 1 <= top else Fraction(0)
    minus_value = minus.value() if r >= 1 else Fraction(0)
    return [(1, plus), (0, Coefficient(-plus_value - minus_value)), (-1, minus)]
