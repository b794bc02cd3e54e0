from fractions import Fraction

import pytest

from attschemes.exceptions import ArithmeticDomainError
from attschemes.mods.unipoly import Coefficient, combine, e_poly, k_poly, q_poly, verify_E_relations, verify_K_relations


@pytest.mark.parametrize(
    ("k", "big_n", "ell", "q", "x", "expected"),
    [
        (0, 3, 2, 2, 1, 1),
        (1, 1, 1, 3, 0, 2),
        (1, 1, 1, 3, 1, -1),
        (1, 2, 2, 2, 0, 9),
        (2, 3, 1, 2, 0, 0),
        (-1, 3, 1, 2, 0, 0),
    ],
)
def test_k_poly(k, big_n, ell, q, x, expected):
    assert k_poly(k, big_n, ell, q, x) == expected


def test_e_poly():
    assert e_poly(1, 2, 1, 3, 0) == 3
    assert e_poly(1, 2, 1, 3, 1) == -1
    assert e_poly(1, 3, 2, 2, 0) == 6
    assert e_poly(2, 3, 2, 2, 0) == 0


def test_q_poly_at_zero_is_the_multiplicity_factor():
    assert q_poly(0, 3, 1, 2, 0) == 1
    assert q_poly(1, 3, 1, 2, 0) == 6


@pytest.mark.parametrize(("big_n", "ell", "q"), [(1, 1, 3), (2, 1, 2), (3, 2, 2), (2, 2, 4)])
def test_k_relations_hold(big_n, ell, q):
    residuals = verify_K_relations(big_n, ell, q)
    assert residuals
    assert [r.to_dict() for r in residuals if not r.passed] == []


@pytest.mark.parametrize(("big_n", "m", "q"), [(2, 1, 3), (3, 1, 2), (4, 2, 2), (3, 2, 3)])
def test_e_relations_hold(big_n, m, q):
    residuals = verify_E_relations(big_n, m, q)
    assert {r.relation for r in residuals} >= {"recE", "cdiffE(+1)", "cdiffE(-1)", "cdiffE(0)"}
    assert [r.to_dict() for r in residuals if not r.passed] == []


def test_combine_reports_nonvanishing_boundary_coefficient():
    terms = [
        (Coefficient(Fraction(2)), True, lambda: Fraction(3)),
        (Coefficient(Fraction(0)), False, lambda: Fraction(100)),
        (Coefficient(Fraction(5)), False, lambda: Fraction(100)),
    ]
    residuals = combine("demo", (0, 0), Fraction(6), terms)
    assert [r.relation for r in residuals] == ["demo", "demo:boundary"]
    assert residuals[0].passed
    assert not residuals[1].passed


def test_coefficient_with_zero_denominator():
    with pytest.raises(ArithmeticDomainError):
        Coefficient(Fraction(1), Fraction(0)).value()
    assert Coefficient(Fraction(0), Fraction(0)).vanishes
