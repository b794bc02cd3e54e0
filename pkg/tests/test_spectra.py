from fractions import Fraction

import pytest

from attschemes.exceptions import DomainIndexError
from attschemes.mods.exactnum import format_exact
from attschemes.mods.spectra import brute_krein, check_closed_forms, dual_U, eigenvalue_T, wilson_duality_check


@pytest.mark.parametrize(
    ("ij", "rs", "expected"),
    [
        ((1, 0), (0, 0), 9),
        ((1, 0), (0, 1), 0),
        ((1, 0), (1, 0), -3),
        ((0, 1), (0, 0), 2),
        ((0, 1), (0, 1), -1),
        ((0, 1), (1, 0), 2),
        ((0, 0), (1, 0), 1),
    ],
)
def test_eigenvalues_3211(grid_3211, ij, rs, expected):
    assert grid_3211.t(ij, rs) == expected


def test_multiplicities_3211(grid_3211):
    assert grid_3211.multiplicity((0, 0)) == 1
    assert grid_3211.multiplicity((1, 0)) == 3
    assert grid_3211.multiplicity((0, 1)) == 8


def test_valencies_and_multiplicities_2322(grid_2322, scheme_2322):
    for ij in grid_2322.domain:
        assert grid_2322.valency(ij) == scheme_2322.valency(ij)
    assert {rs: grid_2322.multiplicity(rs) for rs in grid_2322.domain} == {(0, 0): 1, (1, 0): 6, (0, 1): 21, (0, 2): 42, (1, 1): 42}
    assert sum(grid_2322.multiplicity(rs) for rs in grid_2322.domain) == 112


def test_out_of_domain_index_reads_zero(grid_2322):
    assert grid_2322.t((2, 0), (0, 0)) == 0
    assert grid_2322.u((0, 3), (0, 0)) == 0


def test_pointwise_accessors_validate_indices(params_2322):
    assert eigenvalue_T(0, 1, 0, 0, params_2322) == 9
    assert dual_U(0, 1, 0, 0, params_2322) == 21
    with pytest.raises(DomainIndexError):
        eigenvalue_T(2, 0, 0, 0, params_2322)
    with pytest.raises(DomainIndexError):
        dual_U(0, 0, 0, 3, params_2322)


@pytest.mark.parametrize("fixture", ["grid_2322", "grid_3211"])
def test_wilson_duality(fixture, request):
    residuals = wilson_duality_check(request.getfixturevalue(fixture))
    assert residuals
    assert all(residual.passed for residual in residuals)


@pytest.mark.parametrize("fixture", ["grid_2322", "grid_3211"])
def test_closed_forms(fixture, request):
    residuals = check_closed_forms(request.getfixturevalue(fixture))
    assert {residual.relation for residual in residuals} == {"multiplicity", "T10", "U10", "T01", "U01"}
    assert [residual.to_dict() for residual in residuals if not residual.passed] == []


def test_to_rows(grid_3211):
    rows = grid_3211.to_rows()
    assert len(rows) == 9
    assert rows[0] == {"i": 0, "j": 0, "r": 0, "s": 0, "T": "1", "U": "1"}


@pytest.mark.parametrize("fixture", ["grid_2322", "grid_3211"])
def test_rows_match_their_labels(fixture, request):
    grid = request.getfixturevalue(fixture)
    rows = grid.to_rows()
    assert len(rows) == len(grid.domain) ** 2
    for row in rows:
        ij, rs = (row["i"], row["j"]), (row["r"], row["s"])
        assert row["T"] == format_exact(grid.t(ij, rs))
        assert row["U"] == format_exact(grid.u(rs, ij))


def test_rows_carry_multiplicities_at_the_identity(grid_2322):
    rows = {(row["i"], row["j"], row["r"], row["s"]): row for row in grid_2322.to_rows()}
    assert rows[(0, 0, 0, 1)]["U"] == "21"
    assert rows[(0, 0, 1, 0)]["U"] == "6"
    assert rows[(0, 1, 0, 0)]["T"] == "9"


def test_idempotents_verify(idempotents_3211):
    results = idempotents_3211.verify()
    assert [result.name for result in results] == ["idempotents.orthogonality", "idempotents.completeness", "idempotents.eigen", "idempotents.rank"]
    assert all(result.passed for result in results)
    assert results[-1].detail["method"] == "elimination"


def test_ranks_fall_back_to_trace(idempotents_3211):
    assert idempotents_3211.ranks(rank_limit=0) == {(0, 0): 1, (0, 1): 8, (1, 0): 3}


def test_brute_krein(idempotents_3211):
    tensor, failures = brute_krein(idempotents_3211)
    assert failures == []
    assert tensor.get((0, 0), (1, 0), (1, 0)) == 1
    assert tensor.get((0, 1), (0, 1), (0, 0)) == 8
    assert all(value > 0 for _, value in tensor.items())
    assert isinstance(tensor.get((1, 0), (1, 0), (1, 0)), Fraction)
