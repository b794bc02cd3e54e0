from fractions import Fraction

import mpmath
import pytest

from attschemes.exceptions import ArithmeticDomainError
from attschemes.mods.exactnum import (
    HighPrecisionReal,
    QPowers,
    QValue,
    binomial,
    format_exact,
    hyp_2F1,
    is_prime,
    phi_3_2,
    pochhammer,
    prime_power_decomposition,
    q_binomial,
    q_pochhammer,
    to_exact,
)


@pytest.mark.parametrize(
    ("n", "k", "q", "expected"),
    [
        (3, 2, 2, 7),
        (4, 2, 2, 35),
        (2, 1, 3, 4),
        (5, 0, 2, 1),
        (3, 4, 2, 0),
        (3, -1, 2, 0),
    ],
)
def test_q_binomial(n, k, q, expected):
    assert q_binomial(n, k, Fraction(q)) == expected


def test_q_binomial_is_symmetric():
    for n in range(6):
        for k in range(n + 1):
            assert q_binomial(n, k, Fraction(3)) == q_binomial(n, n - k, Fraction(3))


def test_q_pochhammer():
    assert q_pochhammer(Fraction(2), Fraction(2), 3) == -21
    assert q_pochhammer(Fraction(5), Fraction(2), 0) == 1


def test_q_pochhammer_rejects_negative_order():
    with pytest.raises(ArithmeticDomainError):
        q_pochhammer(Fraction(2), Fraction(2), -1)


def test_hyp_2F1_terminates():
    assert hyp_2F1(-1, -1, -2, 2) == 0
    # Chu-Vandermonde: 2F1(-n, b; c; 1) = (c-b)_n / (c)_n
    assert hyp_2F1(-2, 3, 5, 1) == Fraction(2 * 3, 5 * 6)


def test_format_exact():
    assert format_exact(Fraction(3, 6)) == "1/2"
    assert format_exact(Fraction(-4, 2)) == "-2"
    assert to_exact("7/21") == Fraction(1, 3)


def test_to_exact_rejects_floats():
    with pytest.raises(TypeError):
        to_exact(0.5)


def test_prime_power_decomposition():
    assert prime_power_decomposition(8) == (2, 3)
    assert prime_power_decomposition(27) == (3, 3)
    assert prime_power_decomposition(6) is None
    assert prime_power_decomposition(1) is None
    assert is_prime(7) and not is_prime(9)


def test_qvalue_rejects_non_prime_power():
    with pytest.raises(ArithmeticDomainError):
        QValue.from_order(12)
    assert QValue.from_order(9).q == 9


def test_qpowers_combines_q_and_q_ell():
    qp = QPowers.exact(2, 3)
    assert qp(1) == 2
    assert qp(2, 1) == 32
    assert qp(-1, -1) == Fraction(1, 16)


def test_high_precision_real():
    third = HighPrecisionReal.from_number(Fraction(1, 3), prec=128)
    close = HighPrecisionReal.from_number(Fraction(1, 3), prec=128)
    assert float(third.abs_diff(close)) == 0.0
    assert HighPrecisionReal(mpmath.mpf(1), 128).definitely_less(HighPrecisionReal(mpmath.mpf(2), 128))
    assert third.to_decimal(5) == "0.33333"


def test_q_pochhammer_single_factor():
    assert q_pochhammer(Fraction(1, 4), Fraction(2), 1) == Fraction(3, 4)


def test_q_binomial_pascal_rule():
    q = Fraction(3)
    for n in range(1, 6):
        for k in range(1, n):
            assert q_binomial(n, k, q) == q_binomial(n - 1, k - 1, q) + q**k * q_binomial(n - 1, k, q)


def test_phi_3_2():
    q = Fraction(2)
    assert phi_3_2(Fraction(1), Fraction(3), Fraction(5), Fraction(7), Fraction(9), q, q) == 1
    assert phi_3_2(Fraction(1, 2), Fraction(0), Fraction(0), Fraction(3), Fraction(0), q, q) == Fraction(3, 2)


def test_phi_3_2_needs_a_terminating_parameter():
    with pytest.raises(ArithmeticDomainError, match="non-terminating"):
        phi_3_2(Fraction(3), Fraction(5), Fraction(7), Fraction(9), Fraction(11), Fraction(2), Fraction(1))


def test_classical_helpers():
    assert pochhammer(Fraction(5, 2), 0) == 1
    assert pochhammer(3, 2) == 12
    assert binomial(4, 2) == 6
    assert binomial(2, 3) == 0
