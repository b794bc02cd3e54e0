"""
Exact rational arithmetic and terminating hypergeometric kernels.

Every kernel here is written against plain arithmetic operators, so the same
code evaluates exactly on ``Fraction`` inputs and approximately on
``mpmath.mpf`` inputs (the high-precision limit path).
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence, Union

import mpmath

from attschemes.exceptions import ArithmeticDomainError

ExactScalar = Fraction
Number = Any

# Upper bound on the order searched when detecting q^{-N} parameters.
_MAX_TERMINATING_ORDER = 4096


def to_exact(value: Union[int, str, Fraction]) -> Fraction:
    """
    Convert an int, Fraction or "num/den" string to an ExactScalar.

    Args:
        value: Value to convert

    Returns:
        Canonical Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise TypeError(f"Cannot convert {value!r} to an exact rational")
    return Fraction(value)


def format_exact(value: Fraction) -> str:
    """Render an exact rational as "num/den" (or "num" when integral)."""
    return str(Fraction(value))


def is_prime(value: int) -> bool:
    """Trial-division primality test for the small integers used as field characteristics."""
    if value < 2:
        return False
    return all(value % d for d in range(2, math.isqrt(value) + 1))


def prime_power_decomposition(order: int) -> Optional[tuple]:
    """
    Split ``order`` as p^h.

    Returns:
        (p, h) when order is a prime power, otherwise None
    """
    if order < 2:
        return None
    for p in range(2, order + 1):
        if order % p == 0:
            if not is_prime(p):
                return None
            h = 0
            rest = order
            while rest % p == 0:
                rest //= p
                h += 1
            return (p, h) if rest == 1 else None
    return None


@dataclass(frozen=True)
class QValue:
    """A prime power q = p^h held exactly."""

    p: int
    h: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ArithmeticDomainError(f"characteristic {self.p} is not prime")
        if self.h < 1:
            raise ArithmeticDomainError(f"extension degree must be >= 1, got {self.h}")

    @classmethod
    def from_order(cls, order: int) -> "QValue":
        """Build a QValue from the field order q."""
        decomposition = prime_power_decomposition(order)
        if decomposition is None:
            raise ArithmeticDomainError(f"{order} is not a prime power")
        return cls(*decomposition)

    @property
    def order(self) -> int:
        return self.p**self.h

    @property
    def q(self) -> Fraction:
        return Fraction(self.p**self.h)


def as_q(q: Union[QValue, int, Fraction]) -> Fraction:
    """Accept a QValue, int or Fraction and return q as an exact rational."""
    if isinstance(q, QValue):
        return q.q
    return to_exact(q)


class QPowers:
    """
    Evaluates q^k · (q^ℓ)^a for integers k, a.

    ``q_ell`` carries q^ℓ so that ℓ may be non-integral on the limit path.
    """

    def __init__(self, q: Number, q_ell: Number):
        self.q = q
        self.q_ell = q_ell

    @classmethod
    def exact(cls, q: Union[QValue, int, Fraction], ell: int) -> "QPowers":
        base = as_q(q)
        return cls(base, base**ell)

    def __call__(self, k: int, ell: int = 0) -> Number:
        value = self.q**k
        if ell:
            value = value * self.q_ell**ell
        return value


def q_pochhammer(a: Number, q: Number, n: int) -> Number:
    """
    The q-Pochhammer symbol (a;q)_n = prod_{k<n} (1 - a q^k).

    Raises:
        ArithmeticDomainError: If n is negative
    """
    if n < 0:
        raise ArithmeticDomainError(f"undefined order: q-Pochhammer with n={n}")
    result = q**0
    for k in range(n):
        result = result * (1 - a * q**k)
    return result


def q_binomial(n: int, k: int, q: Number) -> Number:
    """Gaussian binomial [n k]_q; zero outside 0 <= k <= n."""
    if k < 0 or k > n or n < 0:
        return q * 0
    k = min(k, n - k)
    result = q**0
    for t in range(1, k + 1):
        result = result * (1 - q ** (n - k + t)) / (1 - q**t)
    return result


def _q_terminating_order(params: Sequence[Number], q: Number) -> Optional[int]:
    """Smallest N with some parameter equal to q^{-N}, searched exactly."""
    if not isinstance(q, Fraction) or q <= 1:
        return None
    best = None
    for a in params:
        if not isinstance(a, Fraction) or a <= 0 or a > 1:
            continue
        power = Fraction(1)
        for order in range(_MAX_TERMINATING_ORDER):
            if power == a:
                best = order if best is None else min(best, order)
                break
            if power < a:
                break
            power /= q
    return best


def phi_3_2(a1: Number, a2: Number, a3: Number, b1: Number, b2: Number, q: Number, z: Number, order: Optional[int] = None) -> Number:
    """
    Terminating basic hypergeometric series 3phi2(a1,a2,a3; b1,b2; q, z).

    Args:
        a1, a2, a3: Numerator parameters; one of them must be q^{-N}
        b1, b2: Denominator parameters
        q: Base
        z: Argument
        order: Last summation index; detected from the parameters when omitted

    Returns:
        Exact (or working-precision) value of the finite sum

    Raises:
        ArithmeticDomainError: "non-terminating series" or "singular parameter"
    """
    numerators = (a1, a2, a3)
    if order is None:
        order = _q_terminating_order(numerators, q)
        if order is None:
            raise ArithmeticDomainError("non-terminating series: no numerator parameter of the form q^-N")
    term = q**0
    total = term
    for k in range(order):
        denominator = (1 - b1 * q**k) * (1 - b2 * q**k) * (1 - q ** (k + 1))
        numerator = (1 - a1 * q**k) * (1 - a2 * q**k) * (1 - a3 * q**k)
        if numerator == 0:
            break
        if denominator == 0:
            raise ArithmeticDomainError(f"singular parameter: denominator factor vanishes at k={k + 1}")
        term = term * numerator * z / denominator
        total = total + term
    return total


def pochhammer(a: Number, n: int) -> Number:
    """Rising factorial (a)_n."""
    if n < 0:
        raise ArithmeticDomainError(f"undefined order: Pochhammer with n={n}")
    result = Fraction(1) if isinstance(a, (int, Fraction)) else a**0
    for k in range(n):
        result = result * (a + k)
    return result


def binomial(n: int, k: int) -> Fraction:
    """Binomial coefficient as an ExactScalar; zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


def _classical_terminating_order(params: Iterable[Number]) -> Optional[int]:
    orders = [-int(a) for a in params if isinstance(a, (int, Fraction)) and Fraction(a).denominator == 1 and a <= 0]
    return min(orders) if orders else None


def _hypergeometric(numerators: Sequence[Number], denominators: Sequence[Number], z: Number, order: Optional[int]) -> Number:
    if order is None:
        order = _classical_terminating_order(numerators)
        if order is None:
            raise ArithmeticDomainError("non-terminating series: no non-positive integer numerator parameter")
    term = Fraction(1)
    total = term
    for k in range(order):
        numerator = math.prod((Fraction(a) + k for a in numerators), start=Fraction(1))
        denominator = math.prod((Fraction(b) + k for b in denominators), start=Fraction(1)) * (k + 1)
        if numerator == 0:
            break
        if denominator == 0:
            raise ArithmeticDomainError(f"singular parameter: denominator factor vanishes at k={k + 1}")
        term = term * numerator * z / denominator
        total += term
    return total


def hyp_2F1(a: Number, b: Number, c: Number, z: Number, order: Optional[int] = None) -> Fraction:  # pylint: disable=invalid-name
    """Terminating Gauss series 2F1(a, b; c; z)."""
    return _hypergeometric((a, b), (c,), to_exact(z) if isinstance(z, int) else z, order)


def hyp_3F2(a1: Number, a2: Number, a3: Number, b1: Number, b2: Number, z: Number, order: Optional[int] = None) -> Fraction:  # pylint: disable=invalid-name
    """Terminating series 3F2(a1, a2, a3; b1, b2; z)."""
    return _hypergeometric((a1, a2, a3), (b1, b2), to_exact(z) if isinstance(z, int) else z, order)


@dataclass(frozen=True)
class HighPrecisionReal:
    """
    An mpmath value tagged with the bit precision it was computed at.

    The error bound is one unit in the last place plus an absolute floor,
    which is what comparisons on the limit path allow for.
    """

    value: Any
    prec: int = 256

    @classmethod
    def from_number(cls, value: Union[int, Fraction, Any], prec: int = 256) -> "HighPrecisionReal":
        with mpmath.workprec(prec):
            if isinstance(value, Fraction):
                return cls(mpmath.mpf(value.numerator) / value.denominator, prec)
            return cls(mpmath.mpf(value), prec)

    def error_bound(self) -> Any:
        with mpmath.workprec(self.prec):
            return abs(self.value) * mpmath.ldexp(1, 1 - self.prec) + mpmath.ldexp(1, -self.prec)

    def abs_diff(self, other: Union["HighPrecisionReal", Fraction, int]) -> "HighPrecisionReal":
        other_value = other if isinstance(other, HighPrecisionReal) else HighPrecisionReal.from_number(other, self.prec)
        with mpmath.workprec(self.prec):
            return HighPrecisionReal(abs(self.value - other_value.value), self.prec)

    def definitely_less(self, other: "HighPrecisionReal") -> bool:
        with mpmath.workprec(self.prec):
            return self.value + self.error_bound() < other.value - other.error_bound()

    def to_decimal(self, digits: int = 30) -> str:
        return mpmath.nstr(self.value, digits)

    def __float__(self) -> float:
        return float(self.value)
