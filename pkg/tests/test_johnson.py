from fractions import Fraction

import numpy as np
import pytest

from attschemes.data_models.scheme_params import JohnsonParams, SchemeParams
from attschemes.exceptions import ConfigError, DomainIndexError
from attschemes.mods.attenuated import check_axioms
from attschemes.mods.johnson import (
    LimitConfig,
    check_binary,
    check_johnson_eigens,
    eberlein,
    embedding_phi,
    enumerate_johnson,
    intersection_limit_report,
    johnson_eigens,
    johnson_relation,
    krawtchouk,
    limit_check,
)

J332 = JohnsonParams(3, 3, 2)


def test_relation_labels():
    assert johnson_relation(np.array([1, 1, 0]), np.array([1, 1, 0]), 2) == (0, 0)
    assert johnson_relation(np.array([1, 1, 0]), np.array([2, 2, 0]), 2) == (0, 2)
    assert johnson_relation(np.array([1, 1, 0]), np.array([1, 0, 2]), 2) == (1, 0)
    assert johnson_relation(np.array([1, 1, 0]), np.array([0, 2, 1]), 2) == (1, 1)


def test_enumeration(johnson_332):
    assert johnson_332.vertex_count == 12
    assert johnson_332.class_sizes(0) == {(0, 0): 1, (0, 1): 2, (1, 0): 4, (0, 2): 1, (1, 1): 4}
    assert all(result.passed for result in check_axioms(johnson_332))


def test_enumeration_limit():
    with pytest.raises(ConfigError):
        enumerate_johnson(JohnsonParams(10, 10, 5))


def test_closed_form_eigenvalues():
    assert johnson_eigens(J332, 1, 0, 0, 0)[0] == 2
    assert johnson_eigens(J332, 0, 1, 0, 0)[0] == 4
    multiplicities = [johnson_eigens(J332, i, j, 0, 0)[1] for j, i in J332.domain]
    assert multiplicities == [1, 3, 3, 2, 3]
    with pytest.raises(DomainIndexError):
        johnson_eigens(J332, 0, 2, 0, 0)


def test_krawtchouk_binary_case():
    assert krawtchouk(1, 3, 2, 2) == -2
    assert krawtchouk(4, 3, 3, 0) == 0


def test_eigen_identities(johnson_332):
    results = check_johnson_eigens(johnson_332)
    assert [result.name for result in results] == ["johnson.valency", "johnson.eigen"]
    assert all(result.passed for result in results)


@pytest.mark.parametrize(("n", "m"), [(4, 2), (5, 2), (6, 3)])
def test_binary_reduction(n, m):
    assert check_binary(n, m).passed


def test_eberlein():
    assert eberlein(1, 4, 2, 0) == 4
    assert eberlein(1, 4, 2, 1) == 0
    assert eberlein(2, 4, 2, 2) == 1


def test_embedding_with_one_dimensional_w():
    mapping, result = embedding_phi(SchemeParams(2, 3, 1, 2))
    assert result.passed, result.failures
    assert len(mapping) == 12
    assert len(set(mapping.values())) == 12
    assert result.detail["r"] == 3
    # (1,1,0) and (2,2,0) differ in two letters whose differences span a line of w
    assert result.detail["strict_mismatches"] > 0


def test_embedding_with_two_dimensional_w():
    mapping, result = embedding_phi(SchemeParams(2, 3, 2, 2))
    assert result.passed, result.failures
    assert result.detail["r"] == 5
    assert len(mapping) == JohnsonParams(5, 3, 2).vertex_count


@pytest.mark.parametrize(
    "kwargs",
    [
        {"p": 4, "r": 3, "n": 3, "m": 2},
        {"p": 2, "r": 2, "n": 3, "m": 2},
        {"p": 2, "r": 3, "n": 3, "m": 2, "exponents": [5]},
        {"p": 2, "r": 3, "n": 3, "m": 2, "exponents": [4, 6]},
        {"p": 2, "r": 3, "n": 3, "m": 2, "exponents": [6, 5]},
    ],
)
def test_limit_config_errors(kwargs):
    with pytest.raises(ConfigError):
        LimitConfig(**kwargs)


def test_limit_converges():
    config = LimitConfig(p=2, r=3, n=3, m=2, exponents=list(range(13, 21)))
    results, report = limit_check(config)
    assert [result.name for result in results] == ["limit.eigenvalues", "limit.cardinality"]
    assert all(result.passed for result in results), [result.failures for result in results]
    assert report["cardinality"]["target"] == "12"
    assert report["T(0, 1)(0, 0)"]["target"] == "2"
    assert report["T(1, 0)(0, 0)"]["target"] == "4"
    assert len(report["cardinality"]["errors"]) == 8


def test_intersection_limit_report():
    config = LimitConfig(p=3, r=4, n=3, m=1, exponents=[19, 20])
    report = intersection_limit_report(config)
    assert report["h"] == "2^-20"
    assert report["entries"]
    entry = report["entries"][0]
    assert set(entry) == {"key", "index", "target", "johnson", "error"}
    assert Fraction(entry["johnson"]) >= 0


@pytest.mark.slow
def test_limit_converges_over_the_default_sequence():
    results, report = limit_check(LimitConfig(p=3, r=4, n=4, m=2))
    assert all(result.passed for result in results)
    assert report["cardinality"]["h"][0] == "2^-4"
